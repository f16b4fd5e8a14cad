from fractions import Fraction
from math import factorial

from flowcoh.exactpoly import Poly


def rank2_volume(m12: int, m13: int, m23: int, q1, q2) -> Fraction:
    """Volume of P_{2,m}(q1 a1 + q2 a2) by direct integration.

    With t the load on edge (1,3) the loads on (1,2) and (2,3) are q1 - t and
    q2 - t; each load y spread over k parallel edges contributes a simplex of
    normalized volume y^(k-1)/(k-1)!.
    """
    q1, q2 = Fraction(q1), Fraction(q2)
    t = Poly.variable(1, 0)
    integrand = (
        (Poly.constant(1, q1) - t) ** (m12 - 1)
        * t ** (m13 - 1)
        * (Poly.constant(1, q2) - t) ** (m23 - 1)
        * Fraction(1, factorial(m12 - 1) * factorial(m13 - 1) * factorial(m23 - 1))
    )
    top = min(q1, q2)
    return sum((c * top ** (e[0] + 1) / (e[0] + 1) for e, c in integrand.terms.items()), Fraction(0))
