"""The Poincare duality algebra ``D / Ann(v)`` of a homogeneous polynomial.

``D`` is the ring of constant-coefficient differential operators acting on
``v``.  Everything here is degreewise exact linear algebra: the degree-``k``
part of ``Ann(v)`` is the kernel of ``D_k -> R[q]_{d-k}``, ``D -> D v``.
Operator degree ``k`` sits in cohomological degree ``2k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactpoly import (
    DiffOperator,
    Poly,
    kernel_basis,
    monomials,
    multinomial_factorial,
    num_monomials,
    rank,
)
from .flowpoly import MultiplicityMatrix, chamber_volume_polynomial, ehrhart_volume


class FalsificationError(Exception):
    """A claimed identity failed on a concrete instance."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


def _require_homogeneous(v: Poly) -> int:
    if v.is_zero() or not v.is_homogeneous():
        raise ValueError("v must be a nonzero homogeneous polynomial")
    return v.degree


def derivative_matrix(v: Poly, k: int) -> tuple[list[list[Fraction]], list[tuple], list[tuple]]:
    """Matrix of ``D_k -> R[q]_{d-k}``: rows are output monomials, columns operator monomials."""
    d = v.degree
    ops = monomials(v.nvars, k)
    outs = monomials(v.nvars, d - k)
    index = {e: r for r, e in enumerate(outs)}
    mat = [[Fraction(0)] * len(ops) for _ in outs]
    for col, a in enumerate(ops):
        for e, c in v.derivative(a).terms.items():
            mat[index[e]][col] = c
    return mat, ops, outs


def annihilator_degree(v: Poly, k: int) -> list[DiffOperator]:
    """Basis of the degree-``k`` operators killing ``v``."""
    d = _require_homogeneous(v)
    ops = monomials(v.nvars, k)
    if k > d:
        return [DiffOperator(Poly(v.nvars, {a: 1})) for a in ops]
    mat, ops, _ = derivative_matrix(v, k)
    return [DiffOperator(Poly(v.nvars, dict(zip(ops, vec)))) for vec in kernel_basis(mat, len(ops))]


def top_value(v: Poly, exp: Sequence[int]) -> Fraction:
    """``d^exp v`` for ``|exp| = deg v``: a constant."""
    return v.coefficient(tuple(exp)) * multinomial_factorial(tuple(exp))


def pairing_matrix(v: Poly, k: int) -> list[list[Fraction]]:
    """``[d^(a+b) v]`` for ``|a| = k``, ``|b| = d - k``."""
    d = v.degree
    rows = monomials(v.nvars, k)
    cols = monomials(v.nvars, d - k)
    return [[top_value(v, tuple(x + y for x, y in zip(a, b))) for b in cols] for a in rows]


def betti_numbers(v: Poly) -> list[int]:
    """Even Betti numbers ``b_0, b_2, ..., b_{2d}`` of ``D / Ann(v)``.

    Each is computed twice, as ``#monomials - dim Ann_k`` and as the rank of
    the pairing into the complementary degree.
    """
    d = _require_homogeneous(v)
    out = []
    for k in range(d + 1):
        by_kernel = num_monomials(v.nvars, k) - len(annihilator_degree(v, k))
        by_pairing = rank(pairing_matrix(v, k))
        if by_kernel != by_pairing:
            raise AssertionError(f"degree {k}: kernel gives {by_kernel}, pairing rank gives {by_pairing}")
        out.append(by_kernel)
    return out


def poincare_polynomial(betti: Sequence[int]) -> str:
    """``1+2t^2+...`` from the even Betti numbers."""
    parts = []
    for k, b in enumerate(betti):
        if not b:
            continue
        power = 2 * k
        if power == 0:
            parts.append(str(b))
        else:
            mono = "t" if power == 1 else f"t^{power}"
            parts.append(mono if b == 1 else f"{b}{mono}")
    return "+".join(parts) or "0"


@dataclass
class GradedAlgebraReport:
    formal_dimension: int
    betti: list[int]
    annihilator_bases: dict[int, list[DiffOperator]] = field(default_factory=dict)
    pairing_tables: dict[int, list[list[Fraction]]] = field(default_factory=dict)

    @property
    def poincare_polynomial(self) -> str:
        return poincare_polynomial(self.betti)

    @property
    def total_dimension(self) -> int:
        return sum(self.betti)

    def is_poincare_duality(self) -> bool:
        b = self.betti
        if b[0] != 1 or b != b[::-1]:
            return False
        return all(rank(self.pairing_tables[k]) == b[k] for k in self.pairing_tables)

    def to_json(self) -> dict:
        return {
            "formal_dimension": self.formal_dimension,
            "betti": list(self.betti),
            "poincare_polynomial": self.poincare_polynomial,
        }


def graded_algebra_report(v: Poly) -> GradedAlgebraReport:
    d = _require_homogeneous(v)
    return GradedAlgebraReport(
        formal_dimension=2 * d,
        betti=betti_numbers(v),
        annihilator_bases={k: annihilator_degree(v, k) for k in range(d + 1)},
        pairing_tables={k: pairing_matrix(v, k) for k in range(d + 1)},
    )


# ---------------------------------------------------------------------------
# raw coefficients (p_{i,j}, x_j) versus merged coordinates q_j


@dataclass(frozen=True)
class MergedCoordinateMap:
    """``q_j = p_{1,j} + ... + p_{n,j} - x_j``.

    Raw variables are ordered ``p_{1,1..l}, ..., p_{n,1..l}, x_{1..l}``.
    """

    n: int
    l: int

    @property
    def nraw(self) -> int:
        return self.n * self.l + self.l

    def p_index(self, i: int, j: int) -> int:
        return (i - 1) * self.l + (j - 1)

    def x_index(self, j: int) -> int:
        return self.n * self.l + (j - 1)

    def raw_names(self) -> list[str]:
        names = [f"p{i}_{j}" for i in range(1, self.n + 1) for j in range(1, self.l + 1)]
        return names + [f"x{j}" for j in range(1, self.l + 1)]

    def q_forms(self) -> list[Poly]:
        forms = []
        for j in range(1, self.l + 1):
            coeffs = [0] * self.nraw
            for i in range(1, self.n + 1):
                coeffs[self.p_index(i, j)] = 1
            coeffs[self.x_index(j)] = -1
            forms.append(Poly.linear(coeffs))
        return forms

    def to_raw(self, v: Poly) -> Poly:
        if v.nvars != self.l:
            raise ValueError("v must be a polynomial in q_1..q_l")
        return v.substitute(self.q_forms())

    def raw_to_q(self, exps: Sequence[int]) -> tuple[tuple[int, ...], int]:
        """Chain rule: a raw multi-index becomes ``(q multi-index, sign)``."""
        if len(exps) != self.nraw:
            raise ValueError(f"expected {self.nraw} exponents")
        q = [0] * self.l
        sign = 1
        for i in range(1, self.n + 1):
            for j in range(1, self.l + 1):
                q[j - 1] += exps[self.p_index(i, j)]
        for j in range(1, self.l + 1):
            e = exps[self.x_index(j)]
            q[j - 1] += e
            if e % 2:
                sign = -sign
        return tuple(q), sign


def intersection_pairing(v_raw: Poly, exponents: Sequence[int]) -> Fraction:
    """Mixed partial of the raw volume polynomial of total order ``deg v_raw``."""
    d = _require_homogeneous(v_raw)
    exps = tuple(int(e) for e in exponents)
    if len(exps) != v_raw.nvars:
        raise ValueError(f"expected {v_raw.nvars} exponents, got {len(exps)}")
    if sum(exps) != d:
        raise ValueError(f"total exponent {sum(exps)} differs from the top degree {d}")
    return v_raw.derivative(exps).coefficient((0,) * v_raw.nvars)


def verify_variable_merge(l: int, n: int, raw_volume: Poly) -> bool:
    """Does ``raw_volume`` depend on the raw variables only through the ``q_j``?"""
    cmap = MergedCoordinateMap(n, l)
    if raw_volume.nvars != cmap.nraw:
        raise ValueError(f"raw volume must have {cmap.nraw} variables")
    for j in range(1, l + 1):
        base = raw_volume.diff(cmap.p_index(1, j))
        for i in range(2, n + 1):
            if base != raw_volume.diff(cmap.p_index(i, j)):
                return False
        if base + raw_volume.diff(cmap.x_index(j)):
            return False
    return True


# ---------------------------------------------------------------------------
# the nice-chamber differential system


def nst_operators(mult: MultiplicityMatrix) -> list[DiffOperator]:
    """``d_i^{m_{i,i+1}} (d_i + d_{i+1})^{m_{i,i+2}} ... (d_i + ... + d_l)^{m_{i,l+1}}``, i = l..1."""
    l = mult.l
    m = mult.m
    ops = []
    for i in range(l, 0, -1):
        op = DiffOperator(Poly.constant(l, 1))
        for j in range(i + 1, l + 2):
            op = op * DiffOperator.sum_of_partials(l, range(i - 1, j - 1)) ** m[(i, j)]
        ops.append(op)
    return ops


def verify_nst_system(mult: MultiplicityMatrix, v: Poly) -> bool:
    if v.nvars != mult.l:
        raise ValueError("v must be a polynomial in q_1..q_l")
    return all(op(v).is_zero() for op in nst_operators(mult))


def _operator_image_matrix(ops: Sequence[DiffOperator], nvars: int, degree: int):
    """Rows: (operator, output monomial); columns: degree-``degree`` monomials of the unknown."""
    unknowns = monomials(nvars, degree)
    rows = []
    for op in ops:
        outs = monomials(nvars, degree - op.degree)
        if not outs:
            continue
        index = {e: r for r, e in enumerate(outs)}
        block = [[Fraction(0)] * len(unknowns) for _ in outs]
        for col, b in enumerate(unknowns):
            image = op(Poly(nvars, {b: 1}))
            for e, c in image.terms.items():
                block[index[e]][col] = c
        rows.extend(block)
    return rows, unknowns


def nst_solution_space(mult: MultiplicityMatrix) -> list[Poly]:
    """Homogeneous degree ``M - l`` polynomials killed by every nice-chamber operator."""
    l, d = mult.l, mult.dim
    rows, unknowns = _operator_image_matrix(nst_operators(mult), l, d)
    return [Poly(l, dict(zip(unknowns, vec))) for vec in kernel_basis(rows, len(unknowns))]


def solve_nice_volume(mult: MultiplicityMatrix) -> Poly:
    """The volume polynomial as the normalized unique solution of the system."""
    space = nst_solution_space(mult)
    if len(space) != 1:
        raise FalsificationError(
            f"solution space of the nice-chamber system has dimension {len(space)}, expected 1",
            {"l": mult.l, "m": mult.as_json(), "dimension": len(space)},
        )
    (w,) = space
    l = mult.l
    for point in (tuple(range(1, l + 1)), tuple(2 * i - 1 for i in range(1, l + 1))):
        at = w.evaluate(point)
        if at:
            return w * (ehrhart_volume(mult, point) / at)
    raise FalsificationError("solution vanishes at the normalization points", {"l": l})


@dataclass
class GenerationReport:
    degrees: list[dict]
    witness_exponent: tuple[int, ...]
    witness_coefficient: Fraction
    missing: dict[int, list[DiffOperator]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            all(row["ann_dim"] == row["ideal_dim"] for row in self.degrees)
            and self.witness_coefficient != 0
        )

    def to_json(self) -> dict:
        return {
            "generation_check": [dict(row) for row in self.degrees],
            "witness": {
                "exponent": list(self.witness_exponent),
                "coefficient": str(self.witness_coefficient),
            },
            "missing": {str(k): [op.to_string() for op in ops] for k, ops in self.missing.items()},
            "ok": self.ok,
        }


def ideal_slice(generators: Sequence[Poly], nvars: int, k: int) -> list[list[Fraction]]:
    """Coefficient rows spanning the degree-``k`` part of the ideal generated by ``generators``."""
    target = monomials(nvars, k)
    index = {e: c for c, e in enumerate(target)}
    rows = []
    for g in generators:
        for mono in monomials(nvars, k - g.degree):
            prod = g * Poly(nvars, {mono: 1})
            row = [Fraction(0)] * len(target)
            for e, c in prod.terms.items():
                row[index[e]] = c
            rows.append(row)
    return rows


def verify_generation(mult: MultiplicityMatrix, v: Poly | None = None) -> GenerationReport:
    """Compare ``Ann(v)`` with the ideal of the nice-chamber operators, degree by degree.

    Degrees ``0..d+1`` are checked; past ``d+1`` both sides are everything.
    """
    if v is None:
        v = chamber_volume_polynomial(mult)
    l, d = mult.l, _require_homogeneous(v)
    gens = [op.poly for op in nst_operators(mult)]
    degrees, missing = [], {}
    for k in range(d + 2):
        ann = annihilator_degree(v, k)
        slice_rows = ideal_slice(gens, l, k)
        ideal_dim = rank(slice_rows) if slice_rows else 0
        degrees.append({"degree": k, "ann_dim": len(ann), "ideal_dim": ideal_dim})
        if ideal_dim != len(ann):
            absent = []
            span = list(slice_rows)
            target = monomials(l, k)
            for op in ann:
                row = [op.poly.coefficient(e) for e in target]
                if rank(span + [row]) > (rank(span) if span else 0):
                    absent.append(op)
                    span.append(row)
            missing[k] = absent
    witness = tuple(t - 1 for t in mult.row_tails)
    return GenerationReport(degrees, witness, v.coefficient(witness), missing)
