"""Weight multiplicities of tensor products of SU(l+1) representations.

Two independent routes:

* the alternating sum over ``W^n`` of the multiplicity-``n`` partition function
  (Kostant's formula for a product of ``n`` Weyl characters), and
* convolution of single-factor weight multiplicities over all splittings
  ``mu = mu_1 + ... + mu_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactpoly import iter_box
from .flowpoly import MultiplicityMatrix, counter, ehrhart_volume, partition_count
from .rootsys import (
    Weight,
    in_open_cone,
    in_positive_cone,
    shifted_arguments,
    sufficiently_close,
    weyl_act,
    weyl_group,
)


@dataclass(frozen=True)
class MultiplicityQuery:
    lambdas: tuple[Weight, ...]
    mu: Weight

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        if not self.lambdas:
            raise ValueError("need at least one highest weight")
        for lam in self.lambdas:
            if lam.rank != self.mu.rank:
                raise ValueError(f"rank mismatch: lambda has rank {lam.rank}, mu has rank {self.mu.rank}")

    @property
    def l(self) -> int:
        return self.mu.rank

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def total(self) -> Weight:
        out = Weight.zero(self.l)
        for lam in self.lambdas:
            out = out + lam
        return out

    @property
    def dim(self) -> int:
        """Dimension of the weight variety: ``n l(l+1)/2 - l``."""
        return self.n * self.l * (self.l + 1) // 2 - self.l

    def scaled(self, k: int) -> "MultiplicityQuery":
        return MultiplicityQuery(tuple(lam * k for lam in self.lambdas), self.mu * k)

    def validate(self):
        for lam in self.lambdas:
            if not lam.is_dominant():
                raise ValueError(f"lambda = {lam} is not dominant")
            if not lam.is_integral_weight():
                raise ValueError(f"lambda = {lam} is not an integral weight")
        if not self.mu.is_integral_weight():
            raise ValueError(f"mu = {self.mu} is not an integral weight")


def kostant_terms(q: MultiplicityQuery, rho_convention: str = "standard"):
    """Nonzero terms ``(sigmas, sign, p_{l,n}(argument))`` of the alternating sum."""
    q.validate()
    mult = MultiplicityMatrix.uniform(q.l, q.n)
    hits = []
    for sigmas, sign, arg in shifted_arguments(q.lambdas, q.mu, rho_convention):
        if in_positive_cone(arg) and arg.is_integral_root():
            hits.append((sigmas, sign, arg.as_ints()))
    if not hits:
        return []
    count = counter(mult)
    count.reserve(tuple(max(h[k] for _, _, h in hits) for k in range(q.l)))
    out = []
    for sigmas, sign, h in hits:
        c = count(h)
        if c:
            out.append((sigmas, sign, c))
    return out


def tensor_weight_multiplicity(q: MultiplicityQuery, rho_convention: str = "standard") -> int:
    """``dim`` of the ``mu``-weight space of ``V_{lambda_1} x ... x V_{lambda_n}``."""
    total = sum(sign * c for _, sign, c in kostant_terms(q, rho_convention))
    if total < 0 and rho_convention == "standard":
        raise ArithmeticError(f"alternating sum came out negative ({total}) for {q}")
    return total


@lru_cache(maxsize=256)
def weight_support(lam: Weight) -> dict[Weight, int]:
    """Weights of ``V_lam`` with their multiplicities (single-factor Kostant formula)."""
    lowest = min((weyl_act(w, lam) for w in weyl_group(lam.rank)), key=lambda x: sum(x.coeffs))
    depth = (lam - lowest).as_ints()
    out = {}
    for c in iter_box(depth):
        nu = lam - Weight(c)
        m = tensor_weight_multiplicity(MultiplicityQuery((lam,), nu))
        if m:
            out[nu] = m
    return out


def convolution_oracle(q: MultiplicityQuery) -> int:
    """Sum over ``mu = mu_1 + ... + mu_n`` of products of single-factor multiplicities."""
    q.validate()
    supports = [weight_support(lam) for lam in q.lambdas]

    def conv(i: int, target: Weight) -> int:
        if i == len(supports) - 1:
            return supports[i].get(target, 0)
        return sum(m * conv(i + 1, target - nu) for nu, m in supports[i].items())

    return conv(0, q.mu)


def sufficiently_close_reduction_check(q: MultiplicityQuery) -> bool:
    """For sufficiently close ``mu``, the alternating sum equals ``p_{l,n}(lambda - mu)``."""
    if not sufficiently_close(q.lambdas, q.mu):
        raise ValueError("mu is not sufficiently close to lambda")
    diff = q.total - q.mu
    p = partition_count(MultiplicityMatrix.uniform(q.l, q.n), diff) if diff.is_integral_root() else 0
    return tensor_weight_multiplicity(q) == p


def asymptotic_volume_probe(q: MultiplicityQuery, kmax: int) -> list[Fraction]:
    """``[V_{k lambda_1} x ... ; W_{k mu}] / k^d`` for ``k = 1..kmax``."""
    if not sufficiently_close(q.lambdas, q.mu):
        raise ValueError("mu is not sufficiently close to lambda")
    d = q.dim
    return [Fraction(tensor_weight_multiplicity(q.scaled(k)), k**d) for k in range(1, kmax + 1)]


def ehrhart_ratio_sequence(q: MultiplicityQuery, kmax: int) -> list[Fraction]:
    """``p_{l,n}(k (lambda - mu)) / k^d`` for ``k = 1..kmax``."""
    diff = (q.total - q.mu).as_ints()
    mult = MultiplicityMatrix.uniform(q.l, q.n)
    count = counter(mult)
    count.reserve(tuple(kmax * c for c in diff))
    return [Fraction(count(tuple(k * c for c in diff)), k**q.dim) for k in range(1, kmax + 1)]


def limit_volume(q: MultiplicityQuery) -> Fraction:
    """``v_{l,n}(lambda - mu)``, the value the probe converges to."""
    diff = q.total - q.mu
    if not in_open_cone(diff):
        raise ValueError("lambda - mu must lie in the open cone")
    return ehrhart_volume(MultiplicityMatrix.uniform(q.l, q.n), diff)


def identity_only(q: MultiplicityQuery) -> bool:
    """Every surviving term of the alternating sum is the all-identity one."""
    return all(all(w.is_identity() for w in sigmas) for sigmas, _, _ in kostant_terms(q))
