"""Recompute the rank-2, two-orbit example end to end.

Prints the volume on both chambers, the raw-coefficient pairings, the
Poincare polynomial from both routes and the ring presentation.
"""

from fractions import Fraction

from flowcoh.cohomring import cross_validate, presentation_ideal
from flowcoh.dualalgebra import MergedCoordinateMap, graded_algebra_report, intersection_pairing
from flowcoh.flowpoly import MultiplicityMatrix, chamber_volume_polynomial


def main():
    mult = MultiplicityMatrix.uniform(2, 2)
    nice = chamber_volume_polynomial(mult)
    other = chamber_volume_polynomial(mult, "custom", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 1), (5, 2)])
    print("volume, q2 > q1 > 0:", nice.to_string())
    print("volume, q1 > q2 > 0:", other.to_string())

    cmap = MergedCoordinateMap(2, 2)
    raw = cmap.to_raw(nice)
    names = ["p", "q", "r", "s", "x", "y"]
    print("raw volume:", raw.to_string(names))
    for k, name in enumerate(names):
        exps = [3, 0, 0, 0, 0, 0]
        exps[k] += 1
        value: Fraction = intersection_pairing(raw, exps)
        print(f"  <p^3 {name}> = {value}")

    rep = graded_algebra_report(nice)
    print("betti:", rep.betti, "->", rep.poincare_polynomial)
    cv = cross_validate(2, 2, nice)
    print("presentation:", ", ".join(presentation_ideal(2, 2).factored()), "hilbert:", cv.hilbert)


if __name__ == "__main__":
    main()
