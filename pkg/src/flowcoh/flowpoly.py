"""Flow polytopes of the complete DAG on l+1 vertices.

``P_{l,m}(h)`` is the set of nonnegative flows where edge ``(i, j)`` is
duplicated ``m_{ij}`` times and the net flow is ``h``.  Counting its lattice
points gives the (multiplicity-``m``) Kostant partition function; the
Ehrhart leading coefficient gives the lattice-normalized volume, which is a
polynomial in ``h`` on each chamber of the cone of positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Sequence

import numpy as np

from .exactpoly import (
    InconsistentSamplesError,
    Poly,
    RankDeficientError,
    interpolate_homogeneous,
    monomials,
    num_monomials,
    rank,
)
from .rootsys import Weight, in_nice_chamber, in_open_cone, positive_roots, root_alpha


class EhrhartFitError(ValueError):
    pass


@dataclass(frozen=True)
class MultiplicityMatrix:
    """Edge multiplicities ``m_{ij}`` stored in lexicographic ``(i, j)`` order."""

    l: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("rank must be at least 1")
        entries = tuple(int(x) for x in self.entries)
        expected = self.l * (self.l + 1) // 2
        if len(entries) != expected:
            raise ValueError(f"rank {self.l} needs {expected} multiplicities, got {len(entries)}")
        if any(x < 1 for x in entries):
            raise ValueError("multiplicities must be positive integers")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def uniform(cls, l: int, n: int) -> "MultiplicityMatrix":
        return cls(l, (n,) * (l * (l + 1) // 2))

    @classmethod
    def from_dict(cls, l: int, m: dict[tuple[int, int], int]) -> "MultiplicityMatrix":
        return cls(l, tuple(m[r] for r in positive_roots(l)))

    @property
    def roots(self) -> list[tuple[int, int]]:
        return positive_roots(self.l)

    @property
    def m(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.roots, self.entries))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.m[ij]

    @property
    def M(self) -> int:
        return sum(self.entries)

    @property
    def dim(self) -> int:
        """Dimension of the polytope (and degree of the volume) for interior ``h``."""
        return self.M - self.l

    @property
    def row_tails(self) -> tuple[int, ...]:
        """``M_i = sum_{j > i} m_{ij}`` for i = 1..l."""
        m = self.m
        return tuple(sum(m[(i, j)] for j in range(i + 1, self.l + 2)) for i in range(1, self.l + 1))

    def is_uniform(self) -> bool:
        return len(set(self.entries)) == 1

    def as_json(self) -> list[list[int]]:
        return [[i, j, v] for (i, j), v in zip(self.roots, self.entries)]


@dataclass(frozen=True)
class FlowPolytopeSpec:
    mult: MultiplicityMatrix
    h: Weight

    def __post_init__(self):
        if self.h.rank != self.mult.l:
            raise ValueError("rank of h does not match the multiplicity matrix")
        if any(c < 0 for c in self.h.coeffs):
            raise ValueError("h must lie in the cone of positive roots")

    @property
    def dim(self) -> int:
        return self.mult.dim


def _as_int_vector(h: Weight | Sequence, l: int) -> tuple[int, ...]:
    coeffs = h.coeffs if isinstance(h, Weight) else tuple(Fraction(c) for c in h)
    if len(coeffs) != l:
        raise ValueError(f"h has {len(coeffs)} coordinates, rank is {l}")
    if any(Fraction(c).denominator != 1 for c in coeffs):
        raise ValueError(f"h = {tuple(map(str, coeffs))} must have integer alpha-coordinates")
    return tuple(int(c) for c in coeffs)


def partition_table(mult: MultiplicityMatrix, bound: Sequence[int]) -> np.ndarray:
    """Counts ``p_{l,m}(h)`` for every ``0 <= h <= bound`` as an object array.

    Multiplies the generating function ``prod (1 - x^root)^(-m)`` one factor
    ``1/(1 - x^root)`` at a time.  Each factor is a running sum along the
    root's direction, done slice by slice along its first nonzero axis.
    """
    bound = tuple(int(b) for b in bound)
    if len(bound) != mult.l or any(b < 0 for b in bound):
        raise ValueError("bound must be a nonnegative vector of length l")
    table = np.zeros(tuple(b + 1 for b in bound), dtype=object)
    table[(0,) * mult.l] = 1
    for (i, j), mij in zip(mult.roots, mult.entries):
        axes = range(i - 1, j - 1)
        first = i - 1
        for _ in range(mij):
            for idx in range(1, bound[first] + 1):
                dst, src = [], []
                for ax in range(mult.l):
                    if ax == first:
                        dst.append(idx)
                        src.append(idx - 1)
                    elif ax in axes:
                        dst.append(slice(1, None))
                        src.append(slice(0, -1))
                    else:
                        dst.append(slice(None))
                        src.append(slice(None))
                table[tuple(dst)] += table[tuple(src)]
    return table


class KostantCounter:
    """Partition function with a table that grows on demand."""

    def __init__(self, mult: MultiplicityMatrix):
        self.mult = mult
        self.bound = (0,) * mult.l
        self.table = partition_table(mult, self.bound)

    def reserve(self, bound: Sequence[int]):
        if any(b > c for b, c in zip(bound, self.bound)):
            self.bound = tuple(max(b, c) for b, c in zip(bound, self.bound))
            self.table = partition_table(self.mult, self.bound)

    def __call__(self, h: Sequence[int]) -> int:
        if any(c < 0 for c in h):
            return 0
        self.reserve(h)
        return int(self.table[tuple(h)])


@lru_cache(maxsize=16)
def counter(mult: MultiplicityMatrix) -> KostantCounter:
    return KostantCounter(mult)


def partition_count(mult: MultiplicityMatrix, h: Weight | Sequence) -> int:
    """Number of lattice points of ``P_{l,m}(h)``; zero outside the cone."""
    hv = _as_int_vector(h, mult.l)
    if any(c < 0 for c in hv):
        return 0
    return int(partition_table(mult, hv)[hv])


def partition_count_bruteforce(mult: MultiplicityMatrix, h: Weight | Sequence) -> int:
    """Enumerate integer flows edge copy by edge copy; no generating functions."""
    hv = list(_as_int_vector(h, mult.l))
    if any(c < 0 for c in hv):
        return 0
    edges = []
    for (i, j), mij in zip(mult.roots, mult.entries):
        edges.extend([(i - 1, j - 1)] * mij)

    def walk(k: int) -> int:
        if k == len(edges):
            return int(not any(hv))
        a, b = edges[k]
        cap = min(hv[a:b])
        total = 0
        for t in range(cap + 1):
            for ax in range(a, b):
                hv[ax] -= t
            total += walk(k + 1)
            for ax in range(a, b):
                hv[ax] += t
        return total

    return walk(0)


def _leading_coefficient(values: Sequence[int], d: int) -> Fraction:
    """Leading coefficient of the degree-``d`` polynomial through ``values[0..d]``.

    Raises if the same fit fails to reproduce the remaining values.
    """
    diffs = list(values)
    table = [diffs]
    for _ in range(len(values) - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        table.append(diffs)
    # the degree-d fit through k = 0..d reproduces k > d iff higher differences vanish
    if any(any(row) for row in table[d + 1 :]):
        raise EhrhartFitError(
            f"counts at k = {d + 1}..{len(values) - 1} are off the degree-{d} fit; "
            "wrong dimension or h on a wall"
        )
    return Fraction(table[d][0], factorial(d))


def ehrhart_volume(mult: MultiplicityMatrix, h: Weight | Sequence, extra: int = 2) -> Fraction:
    """Lattice-normalized volume of ``P_{l,m}(h)`` as the Ehrhart leading coefficient."""
    hv = _as_int_vector(h, mult.l)
    if any(c <= 0 for c in hv):
        raise ValueError(f"h = {hv} is on the boundary of the cone; the polytope is not full-dimensional")
    d = mult.dim
    kmax = d + extra
    table = counter(mult)
    table.reserve(tuple(kmax * c for c in hv))
    counts = [table(tuple(k * c for c in hv)) for k in range(kmax + 1)]
    return _leading_coefficient(counts, d)


def _gaps_to_q(l: int) -> list[Poly]:
    """The linear forms ``q_i - q_{i-1}`` (with ``q_0 = 0``) in the ring of q's."""
    out = []
    for i in range(l):
        coeffs = [0] * l
        coeffs[i] = 1
        if i:
            coeffs[i - 1] = -1
        out.append(Poly.linear(coeffs))
    return out


def nice_volume_by_differences(mult: MultiplicityMatrix) -> Poly:
    """Nice-chamber volume polynomial from finite differences of the counts.

    On the nice chamber the counts agree with a polynomial of degree ``d``.
    Writing ``q_i - q_{i-1} = 1 + s_i``, its degree-``d`` Newton coefficients
    ``Delta^j p`` (``|j| = d``) are constants, and the top homogeneous part is
    ``sum Delta^j p / j! * prod (q_i - q_{i-1})^{j_i}``.  Order ``d + 1``
    differences are checked to vanish.
    """
    l, d = mult.l, mult.dim
    D = d + 1
    base = tuple(range(1, l + 1))
    counts = counter(mult)
    counts.reserve(tuple(b + D for b in base))
    grid = np.zeros((D + 1,) * l, dtype=object)
    for s in np.ndindex(*grid.shape):
        if sum(s) <= D:
            q, acc = [], 0
            for i in range(l):
                acc += 1 + s[i]
                q.append(acc)
            grid[s] = counts(tuple(q))
    for ax in range(l):
        moved = np.moveaxis(grid, ax, 0)
        for r in range(1, D + 1):
            moved[r:] = moved[r:] - moved[r - 1 : -1]
    bad = [j for j in monomials(l, D) if grid[j] != 0]
    if bad:
        raise EhrhartFitError(
            f"counts on the nice chamber are not a degree-{d} polynomial "
            f"(nonzero difference of order {D} at {bad[0]})"
        )
    gaps = _gaps_to_q(l)
    top = {}
    for j in monomials(l, d):
        c = grid[j]
        if c:
            denom = 1
            for e in j:
                denom *= factorial(e)
            top[j] = Fraction(int(c), denom)
    return Poly(l, top).substitute(gaps)


def slice_points(l: int, c: int, predicate: Callable[[Weight], bool]) -> list[tuple[int, ...]]:
    """Integer points with ``q_l = c`` and all coordinates in ``1..c`` accepted by ``predicate``."""

    def rec(prefix):
        if len(prefix) == l - 1:
            yield prefix + (c,)
            return
        for x in range(1, c + 1):
            yield from rec(prefix + (x,))

    return [pt for pt in rec(()) if predicate(Weight(pt))]


def fit_from_samples(mult: MultiplicityMatrix, samples: Sequence[Sequence[int]], surplus: int = 2) -> Poly:
    """Interpolate the volume polynomial from Ehrhart volumes at caller-supplied points."""
    l, d = mult.l, mult.dim
    needed = num_monomials(l, d)
    if len(samples) < needed + surplus:
        raise RankDeficientError(len(samples), needed + surplus)
    values = [(tuple(pt), ehrhart_volume(mult, pt)) for pt in samples]
    try:
        return interpolate_homogeneous(l, d, values)
    except InconsistentSamplesError as exc:
        raise InconsistentSamplesError(f"samples straddle a wall: {exc}") from None


def slice_samples(
    mult: MultiplicityMatrix,
    predicate: Callable[[Weight], bool] = in_nice_chamber,
    surplus: int = 2,
    max_c: int = 200,
) -> list[tuple[int, ...]]:
    """Slice points ``q_l = c`` (c increasing) until full rank plus ``surplus`` extra."""
    l, d = mult.l, mult.dim
    exps = monomials(l, d)
    needed = len(exps)
    chosen: list[tuple[int, ...]] = []
    rows: list[list[Fraction]] = []
    extra: list[tuple[int, ...]] = []
    for c in range(1, max_c + 1):
        for pt in slice_points(l, c, predicate):
            if len(chosen) < needed:
                row = [Fraction(1)] * needed
                for k, exp in enumerate(exps):
                    val = 1
                    for x, e in zip(pt, exp):
                        val *= x**e
                    row[k] = Fraction(val)
                if rank(rows + [row]) > len(rows):
                    rows.append(row)
                    chosen.append(pt)
            elif len(extra) < surplus:
                extra.append(pt)
            if len(chosen) == needed and len(extra) == surplus:
                return chosen + extra
    raise RankDeficientError(len(chosen), needed)


def chamber_volume_polynomial(
    mult: MultiplicityMatrix,
    chamber: str = "nice",
    samples: Iterable[Sequence[int]] | None = None,
    method: str = "differences",
) -> Poly:
    """Volume polynomial ``v_{l,m}`` in ``q_1..q_l`` on one chamber.

    ``chamber="nice"`` computes it on ``0 < q_1 < ... < q_l``, either from
    finite differences of the counts (default) or by interpolating Ehrhart
    volumes at slice points (``method="slice"``).  In both cases the result is
    checked against direct Ehrhart volumes at two points not used to build it.
    ``chamber="custom"`` interpolates Ehrhart volumes at the given interior
    ``samples``; wall crossings show up as an inconsistent fit.
    """
    if chamber == "custom":
        if samples is None:
            raise ValueError("custom chamber needs sample points")
        return fit_from_samples(mult, [tuple(int(x) for x in pt) for pt in samples])
    if chamber != "nice":
        raise ValueError(f"unknown chamber tag {chamber!r}")
    l = mult.l
    if method == "differences":
        v = nice_volume_by_differences(mult)
        checks = [tuple(range(1, l + 1)), tuple(2 * i - 1 for i in range(1, l + 1))]
        if l == 1:
            checks = [(1,), (3,)]
    elif method == "slice":
        pts = slice_samples(mult)
        v = fit_from_samples(mult, pts)
        checks = [tuple(2 * i - 1 for i in range(1, l + 1)), tuple(i * i for i in range(1, l + 1))]
        if l == 1:
            checks = [(5,), (7,)]
    else:
        raise ValueError(f"unknown method {method!r}")
    for pt in checks:
        direct = ehrhart_volume(mult, pt)
        if v.evaluate(pt) != direct:
            raise InconsistentSamplesError(
                f"volume polynomial gives {v.evaluate(pt)} at {pt}, Ehrhart count gives {direct}"
            )
    return v
