"""Type A_l roots and weights, the Weyl group S_{l+1}, and cone predicates.

Weights are stored in the simple-root basis.  In ``e``-coordinates (the
standard basis of R^{l+1} restricted to the sum-zero hyperplane) the simple
root ``alpha_i`` is ``e_i - e_{i+1}``, so ``sum q_i alpha_i`` has entries
``q_1, q_2 - q_1, ..., q_l - q_{l-1}, -q_l``.  The Weyl group acts by
permuting those entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Sequence

from .exactpoly import Rational


@dataclass(frozen=True)
class Weight:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("rank must be at least 1")

    @classmethod
    def alpha(cls, *coeffs: Rational) -> "Weight":
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, l: int) -> "Weight":
        return cls((Fraction(0),) * l)

    @classmethod
    def simple_root(cls, l: int, i: int) -> "Weight":
        """``alpha_i`` with 1-based ``i``."""
        return cls(tuple(Fraction(int(k == i - 1)) for k in range(l)))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "Weight"):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coeffs))

    def __mul__(self, k: Rational) -> "Weight":
        return Weight(tuple(a * k for a in self.coeffs))

    __rmul__ = __mul__

    def to_e(self) -> tuple[Fraction, ...]:
        q = (Fraction(0),) + self.coeffs + (Fraction(0),)
        return tuple(q[i + 1] - q[i] for i in range(self.rank + 1))

    @classmethod
    def from_e(cls, e: Sequence[Rational]) -> "Weight":
        e = [Fraction(x) for x in e]
        if sum(e) != 0:
            raise ValueError("e-coordinates of a type A weight must sum to zero")
        out, acc = [], Fraction(0)
        for x in e[:-1]:
            acc += x
            out.append(acc)
        return cls(tuple(out))

    def to_fundamental(self) -> tuple[Fraction, ...]:
        """Coordinates in the fundamental-weight basis (Cartan matrix times alpha-coords)."""
        q = (Fraction(0),) + self.coeffs + (Fraction(0),)
        return tuple(2 * q[i] - q[i - 1] - q[i + 1] for i in range(1, self.rank + 1))

    def is_integral_root(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_integral_weight(self) -> bool:
        return all(c.denominator == 1 for c in self.to_fundamental())

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.to_fundamental())

    def as_ints(self) -> tuple[int, ...]:
        if not self.is_integral_root():
            raise ValueError(f"{self} is not in the root lattice")
        return tuple(int(c) for c in self.coeffs)

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)


def fundamental_to_alpha(l: int, coeffs: Sequence[Rational]) -> Weight:
    """``sum coeffs_j Lambda_j`` in the simple-root basis.

    Uses the closed form of the inverse A_l Cartan matrix,
    ``min(j, k) * (l + 1 - max(j, k)) / (l + 1)``.
    """
    if l < 1:
        raise ValueError("rank must be at least 1")
    if len(coeffs) != l:
        raise ValueError(f"expected {l} fundamental coordinates, got {len(coeffs)}")
    c = [Fraction(x) for x in coeffs]
    out = []
    for k in range(1, l + 1):
        out.append(sum((c[j - 1] * Fraction(min(j, k) * (l + 1 - max(j, k)), l + 1) for j in range(1, l + 1)), Fraction(0)))
    return Weight(tuple(out))


def fundamental_weight(l: int, j: int) -> Weight:
    return fundamental_to_alpha(l, [int(k == j) for k in range(1, l + 1)])


def standard_rho(l: int) -> Weight:
    """Half the sum of the positive roots, ``q_i = i (l + 1 - i) / 2``."""
    if l < 1:
        raise ValueError("rank must be at least 1")
    return Weight(tuple(Fraction(i * (l + 1 - i), 2) for i in range(1, l + 1)))


def literal_rho(l: int) -> Weight:
    """Half the sum of the *simple* roots; agrees with :func:`standard_rho` only for l = 1."""
    return Weight((Fraction(1, 2),) * l)


def rho(l: int, convention: str = "standard") -> Weight:
    if convention == "standard":
        return standard_rho(l)
    if convention == "simple-half-sum":
        return literal_rho(l)
    raise ValueError(f"unknown rho convention {convention!r}")


def positive_roots(l: int) -> list[tuple[int, int]]:
    """Pairs ``(i, j)``, 1 <= i < j <= l+1, for the root ``e_i - e_j``, lexicographic."""
    return [(i, j) for i in range(1, l + 2) for j in range(i + 1, l + 2)]


def root_alpha(l: int, i: int, j: int) -> tuple[int, ...]:
    """``e_i - e_j = alpha_i + ... + alpha_{j-1}`` in alpha-coordinates."""
    return tuple(int(i <= k < j) for k in range(1, l + 1))


def _signature(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        k, length = start, 0
        while not seen[k]:
            seen[k] = True
            k = perm[k] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class WeylElement:
    """A permutation of ``1..l+1``; ``perm[i-1]`` is the image of ``i``."""

    perm: tuple[int, ...]
    sign: int = 0

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")
        object.__setattr__(self, "perm", perm)
        sig = _signature(perm)
        if self.sign not in (0, sig):
            raise ValueError("sign does not match the permutation's signature")
        object.__setattr__(self, "sign", sig)

    @property
    def rank(self) -> int:
        return len(self.perm) - 1

    @classmethod
    def identity(cls, l: int) -> "WeylElement":
        return cls(tuple(range(1, l + 2)))

    @classmethod
    def transposition(cls, l: int, a: int, b: int) -> "WeylElement":
        perm = list(range(1, l + 2))
        perm[a - 1], perm[b - 1] = b, a
        return cls(tuple(perm))

    @classmethod
    def simple_reflection(cls, l: int, i: int) -> "WeylElement":
        return cls.transposition(l, i, i + 1)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, len(self.perm) + 1))

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        """Composition ``self o other`` (apply ``other`` first)."""
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return WeylElement(tuple(self.perm[o - 1] for o in other.perm))


@lru_cache(maxsize=None)
def weyl_group(l: int) -> tuple[WeylElement, ...]:
    """All ``(l+1)!`` elements, identity first."""
    return tuple(WeylElement(p) for p in permutations(range(1, l + 2)))


def weyl_act(w: WeylElement, x: Weight) -> Weight:
    if w.rank != x.rank:
        raise ValueError(f"rank mismatch: element of S_{w.rank + 1} acting on rank {x.rank}")
    e = x.to_e()
    out = [Fraction(0)] * len(e)
    for i, c in enumerate(e):
        out[w.perm[i] - 1] = c
    return Weight.from_e(out)


def in_positive_cone(x: Weight) -> bool:
    return all(c >= 0 for c in x.coeffs)


def in_open_cone(x: Weight) -> bool:
    return all(c > 0 for c in x.coeffs)


def in_nice_chamber(x: Weight) -> bool:
    """``0 < q_1 < q_2 < ... < q_l``."""
    q = (Fraction(0),) + x.coeffs
    return all(q[i] < q[i + 1] for i in range(len(q) - 1))


def shifted_arguments(lambdas: Sequence[Weight], mu: Weight, rho_convention: str = "standard"):
    """Yield ``(sigmas, sign, sum sigma_i(lambda_i + rho) - (mu + n rho))`` over W^n."""
    if not lambdas:
        raise ValueError("need at least one lambda")
    l = mu.rank
    for lam in lambdas:
        lam._check(mu)
    r = rho(l, rho_convention)
    n = len(lambdas)
    shifted = [lam + r for lam in lambdas]
    base = mu + r * n
    group = weyl_group(l)
    # orbit images per factor, computed once
    images = [[(w, weyl_act(w, s)) for w in group] for s in shifted]
    for combo in product(*images):
        total = Weight.zero(l)
        sign = 1
        for w, img in combo:
            total = total + img
            sign *= w.sign
        yield tuple(w for w, _ in combo), sign, total - base


def sufficiently_close(lambdas: Sequence[Weight], mu: Weight, rho_convention: str = "standard") -> bool:
    """True iff the identity tuple is the only one landing in the closed positive cone."""
    identity_hit = False
    for sigmas, _, arg in shifted_arguments(lambdas, mu, rho_convention):
        if in_positive_cone(arg):
            if all(w.is_identity() for w in sigmas):
                identity_hit = True
            else:
                return False
    return identity_hit


def parse_weight(text: str, l: int | None = None, basis: str = "fundamental") -> Weight:
    """Parse ``"2/3,1/3"`` in the given basis (``alpha`` or ``fundamental``)."""
    try:
        coeffs = [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed weight {text!r}: {exc}") from None
    if l is not None and len(coeffs) != l:
        raise ValueError(f"weight {text!r} has {len(coeffs)} coordinates, rank is {l}")
    if basis == "alpha":
        return Weight(tuple(coeffs))
    if basis == "fundamental":
        return fundamental_to_alpha(len(coeffs), coeffs)
    raise ValueError(f"unknown basis {basis!r}")
