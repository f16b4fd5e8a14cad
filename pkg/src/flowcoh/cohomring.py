"""The quotient ring ``R[z_1..z_l] / (z_l^n, z_{l-1}^n (z_{l-1}+z_l)^n, ...)``.

Its Hilbert function is computed degree by degree and compared with the
Betti numbers of ``D / Ann(v_{l,n})`` under ``z_j <-> d/dq_j``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dualalgebra import FalsificationError, betti_numbers, ideal_slice
from .exactpoly import DiffOperator, Poly, num_monomials, rank
from .flowpoly import MultiplicityMatrix, chamber_volume_polynomial


@dataclass(frozen=True)
class PresentationIdeal:
    l: int
    n: int
    generators: tuple[Poly, ...]

    @property
    def socle_degree(self) -> int:
        return self.n * self.l * (self.l + 1) // 2 - self.l

    def factored(self) -> list[str]:
        """Generators as unexpanded products, ``z2^2``, ``z1^2*(z1+z2)^2``."""
        out = []
        for i in range(self.l, 0, -1):
            factors = []
            for j in range(i, self.l + 1):
                base = "+".join(f"z{k}" for k in range(i, j + 1))
                if j > i:
                    base = f"({base})"
                factors.append(base if self.n == 1 else f"{base}^{self.n}")
            out.append("*".join(factors))
        return out


def presentation_ideal(l: int, n: int) -> PresentationIdeal:
    if l < 1 or n < 1:
        raise ValueError("l and n must be positive")
    gens = []
    for i in range(l, 0, -1):
        g = Poly.constant(l, 1)
        for j in range(i, l + 1):
            g = g * Poly.linear([int(i <= k <= j) for k in range(1, l + 1)]) ** n
        gens.append(g)
    return PresentationIdeal(l, n, tuple(gens))


def hilbert_function(ideal: PresentationIdeal) -> list[int]:
    """``dim (R/I)_k`` for ``k = 0, 1, ...`` up to the last nonzero degree."""
    out = []
    k = 0
    while True:
        rows = ideal_slice(ideal.generators, ideal.l, k)
        h = num_monomials(ideal.l, k) - (rank(rows) if rows else 0)
        if h == 0 and k > ideal.socle_degree:
            break
        out.append(h)
        k += 1
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass
class CrossValidation:
    l: int
    n: int
    relations_annihilate: bool
    hilbert: list[int]
    betti: list[int]

    @property
    def ok(self) -> bool:
        return self.relations_annihilate and self.hilbert == self.betti

    def to_json(self) -> dict:
        return {
            "generators": presentation_ideal(self.l, self.n).factored(),
            "hilbert": self.hilbert,
            "betti": self.betti,
            "relations_annihilate": self.relations_annihilate,
            "matches_dual_algebra": self.ok,
        }


def cross_validate(l: int, n: int, v: Poly | None = None, strict: bool = True) -> CrossValidation:
    """Check the presentation against ``D/Ann(v_{l,n})``; raise on mismatch if ``strict``."""
    if v is None:
        v = chamber_volume_polynomial(MultiplicityMatrix.uniform(l, n))
    ideal = presentation_ideal(l, n)
    kills = all(DiffOperator(g)(v).is_zero() for g in ideal.generators)
    result = CrossValidation(l, n, kills, hilbert_function(ideal), betti_numbers(v))
    if strict and not result.ok:
        bad = next(
            (k for k, (a, b) in enumerate(zip(result.hilbert, result.betti)) if a != b),
            min(len(result.hilbert), len(result.betti)),
        )
        raise FalsificationError(
            f"presentation ring disagrees with D/Ann(v) (first offending degree {bad})",
            result.to_json(),
        )
    return result
