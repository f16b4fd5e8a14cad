"""Exact multivariate polynomials over the rationals.

Polynomials are stored sparsely as ``{exponent tuple: Fraction}`` with no zero
coefficients.  The same class doubles as the ring of constant-coefficient
differential operators: :class:`DiffOperator` wraps a polynomial in the
symbols ``d1..dn`` and acts on polynomials by differentiation.

The linear algebra helpers at the bottom (fraction-free elimination, kernels,
homogeneous interpolation) are what the annihilator and Hilbert-function code
is built on.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from math import comb, factorial, lcm
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]
Rational = Fraction | int


class InterpolationError(ValueError):
    pass


class RankDeficientError(InterpolationError):
    """The sample matrix does not determine the polynomial."""

    def __init__(self, rank: int, needed: int):
        super().__init__(
            f"interpolation system has rank {rank} < {needed}; supply more "
            f"(or better spread) sample points"
        )
        self.rank = rank
        self.needed = needed


class InconsistentSamplesError(InterpolationError):
    """Surplus samples disagree with the fitted polynomial."""


def _order_key(exp: Exponent):
    # graded lex, descending
    return (-sum(exp), tuple(-e for e in exp))


def monomials(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total ``degree`` in graded-lex (descending) order."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    out.sort(key=_order_key)
    return out


def num_monomials(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


class Poly:
    """Sparse polynomial in ``nvars`` variables with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Rational] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # construction helpers

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Poly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Rational) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        """The ``i``-th variable, 0-based."""
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence[Rational]) -> "Poly":
        n = len(coeffs)
        return cls(n, {tuple(int(k == i) for k in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_coefficients(cls, exps: Sequence[Exponent], coeffs: Sequence[Rational]) -> "Poly":
        if not exps:
            raise ValueError("need at least one exponent to infer nvars")
        return cls(len(exps[0]), dict(zip(exps, coeffs)))

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]))

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point dimension does not match nvars")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            val = c
            for x, e in zip(pt, exp):
                if e:
                    val *= x**e
            total += val
        return total

    # arithmetic

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # calculus

    def derivative(self, exp: Exponent) -> "Poly":
        """Apply ``d^exp`` (a multi-index of derivative orders)."""
        out = {}
        for e, c in self.terms.items():
            if any(b < a for a, b in zip(exp, e)):
                continue
            factor = 1
            for a, b in zip(exp, e):
                for t in range(b - a + 1, b + 1):
                    factor *= t
            out[tuple(b - a for a, b in zip(exp, e))] = c * factor
        return Poly._raw(self.nvars, out)

    def diff(self, i: int, times: int = 1) -> "Poly":
        exp = [0] * self.nvars
        exp[i] = times
        return self.derivative(tuple(exp))

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: replace variable ``i`` by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars
        powers: list[dict[int, Poly]] = [{0: Poly.constant(target, 1)} for _ in images]

        def power(i: int, e: int) -> Poly:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        out = Poly.zero(target)
        for exp, c in self.terms.items():
            term = Poly.constant(target, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    # text

    def to_string(self, names: Sequence[str] | str = "q") -> str:
        names = _names(names, self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for k, (exp, c) in enumerate(self.sorted_terms()):
            mono = " ".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag} {mono}"
            if k == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self.nvars}, {self.to_string()!r})"


def _names(names: Sequence[str] | str, nvars: int) -> list[str]:
    if isinstance(names, str):
        return [f"{names}{i + 1}" for i in range(nvars)]
    if len(names) != nvars:
        raise ValueError("wrong number of variable names")
    return list(names)


_TERM_SPLIT = re.compile(r"\s+(?=[+-]\s)")


def parse_poly(text: str, nvars: int, names: Sequence[str] | str = "q") -> Poly:
    """Inverse of :meth:`Poly.to_string` (also accepts ``*`` between factors)."""
    names = _names(names, nvars)
    index = {n: i for i, n in enumerate(names)}
    text = text.strip()
    if text == "0":
        return Poly.zero(nvars)
    terms: dict[Exponent, Fraction] = {}
    for chunk in _TERM_SPLIT.split(text):
        chunk = chunk.strip()
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:].strip()
        coeff = Fraction(sign)
        exp = [0] * nvars
        for tok in chunk.replace("*", " ").split():
            base, _, power = tok.partition("^")
            if base in index:
                exp[index[base]] += int(power) if power else 1
            else:
                coeff *= Fraction(tok)
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Poly(nvars, terms)


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


class DiffOperator:
    """Constant-coefficient differential operator, a polynomial in ``d1..dn``."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        self.poly = poly

    @classmethod
    def partial(cls, nvars: int, i: int, times: int = 1) -> "DiffOperator":
        return cls(Poly.variable(nvars, i) ** times)

    @classmethod
    def sum_of_partials(cls, nvars: int, indices: Iterable[int]) -> "DiffOperator":
        """``d_i + d_j + ...``; indices are 0-based."""
        return cls(reduce(lambda a, b: a + b, (Poly.variable(nvars, i) for i in indices)))

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __call__(self, v: Poly) -> Poly:
        return apply_operator(self, v)

    def __mul__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator(self.poly * other.poly)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator(self.poly + other.poly)

    def __pow__(self, k: int) -> "DiffOperator":
        return DiffOperator(self.poly**k)

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def to_string(self, names: Sequence[str] | str = "d") -> str:
        return self.poly.to_string(names)

    def __repr__(self):
        return f"DiffOperator({self.to_string()!r})"


def apply_operator(D: DiffOperator, v: Poly) -> Poly:
    if D.nvars != v.nvars:
        raise ValueError("operator and polynomial live in different rings")
    out = Poly.zero(v.nvars)
    for exp, c in D.poly.terms.items():
        out = out + v.derivative(exp) * c
    return out


# ---------------------------------------------------------------------------
# exact linear algebra

Matrix = list[list[Fraction]]


def _integer_rows(matrix: Sequence[Sequence[Rational]]) -> list[list[int]]:
    rows = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        scale = reduce(lcm, (x.denominator for x in row), 1)
        rows.append([int(x * scale) for x in row])
    return rows


def echelon(matrix: Sequence[Sequence[Rational]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) row echelon form.

    Rows are first cleared of denominators (this does not change the row
    space).  Returns the integer echelon rows (zero rows dropped) and the
    pivot columns.
    """
    rows = _integer_rows(matrix)
    if not rows:
        return [], []
    ncols = len(rows[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv_row = rows[r]
        pv = piv_row[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            f = row[c]
            if f:
                row[c:] = [(pv * a - f * b) // prev for a, b in zip(row[c:], piv_row[c:])]
            elif prev != 1 or pv != 1:
                row[c:] = [(pv * a) // prev for a in row[c:]]
        prev = pv
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix: Sequence[Sequence[Rational]]) -> int:
    return len(echelon(matrix)[1])


def kernel_basis(matrix: Sequence[Sequence[Rational]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column.

    ``ncols`` is only needed when ``matrix`` has no rows.
    """
    if not matrix:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(matrix[0])
    rows, pivots = echelon(matrix)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in reversed(list(zip(rows, pivots))):
            s = sum((row[j] * x[j] for j in range(pc + 1, ncols) if row[j] and x[j]), Fraction(0))
            x[pc] = -s / row[pc]
        basis.append(x)
    return basis


def interpolate_homogeneous(
    nvars: int,
    degree: int,
    samples: Sequence[tuple[Sequence[Rational], Rational]],
) -> Poly:
    """The homogeneous polynomial of ``degree`` through ``samples``.

    Extra samples beyond what is needed are used as a consistency check.
    """
    exps = monomials(nvars, degree)
    needed = len(exps)
    points = [tuple(Fraction(x) for x in pt) for pt, _ in samples]
    if len(set(points)) != len(points):
        raise ValueError("sample points must be pairwise distinct")
    if len(samples) < needed:
        raise RankDeficientError(len(samples), needed)
    rows = []
    for pt, (_, value) in zip(points, samples):
        row = []
        for exp in exps:
            val = Fraction(1)
            for x, e in zip(pt, exp):
                if e:
                    val *= x**e
            row.append(val)
        rows.append(row + [-Fraction(value)])
    a_rank = rank([row[:-1] for row in rows])
    if a_rank < needed:
        raise RankDeficientError(a_rank, needed)
    ker = kernel_basis(rows)
    if not ker:
        raise InconsistentSamplesError(
            "surplus samples disagree with the degree-%d fit (wrong degree, or "
            "samples straddle a chamber wall)" % degree
        )
    (vec,) = ker
    return Poly(nvars, {e: c for e, c in zip(exps, vec[:-1])})


def multinomial_factorial(exp: Exponent) -> int:
    out = 1
    for e in exp:
        out *= factorial(e)
    return out


def iter_box(bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All integer vectors ``0 <= x <= bounds`` (componentwise)."""
    if not bounds:
        yield ()
        return
    for head in range(bounds[0] + 1):
        for tail in iter_box(bounds[1:]):
            yield (head,) + tail
