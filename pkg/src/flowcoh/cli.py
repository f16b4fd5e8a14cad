"""Command line front end.

Exit status: 0 on success, 2 on bad input, 3 when a checked identity fails
on the given instance.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import cohomring, dualalgebra, flowpoly, multiplicity, rootsys
from .exactpoly import InterpolationError, Poly, monomials
from .flowpoly import MultiplicityMatrix

EXIT_OK, EXIT_INVALID, EXIT_FALSIFIED = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def emit_report(result: dict, fmt: str = "text", text: str | None = None) -> str:
    """Serialize a command result.  JSON keys keep construction order."""
    if fmt == "json":
        return json.dumps(result, separators=(", ", ": "))
    if text is not None:
        return text
    lines = []
    for key, value in result.items():
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument helpers


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValueError(f"expected a comma-separated list of integers, got {text!r}") from None


def _mult(args) -> MultiplicityMatrix:
    if args.l is None:
        raise ValueError("--l is required")
    if args.m:
        return MultiplicityMatrix(args.l, tuple(_ints(args.m)))
    if args.n:
        return MultiplicityMatrix.uniform(args.l, args.n)
    raise ValueError("give either --n (uniform multiplicity) or --m")


def _h(args) -> rootsys.Weight:
    if not args.h:
        raise ValueError("--h is required (alpha-coordinates)")
    return rootsys.parse_weight(args.h, args.l, "alpha")


def _samples(text: str | None) -> list[tuple[int, ...]] | None:
    if not text:
        return None
    return [tuple(_ints(chunk)) for chunk in text.split(";") if chunk.strip()]


def _query(args) -> multiplicity.MultiplicityQuery:
    if not args.lam:
        raise ValueError("at least one --lambda is required")
    if args.mu is None:
        raise ValueError("--mu is required")
    lams = tuple(rootsys.parse_weight(t, args.l, args.basis) for t in args.lam)
    mu = rootsys.parse_weight(args.mu, args.l, args.basis)
    q = multiplicity.MultiplicityQuery(lams, mu)
    q.validate()
    return q


def _volume_poly(args, mult: MultiplicityMatrix) -> Poly:
    if args.chamber == "custom":
        return flowpoly.chamber_volume_polynomial(mult, "custom", _samples(args.samples))
    return flowpoly.chamber_volume_polynomial(mult, "nice")


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, text)


def cmd_partition(args):
    mult = _mult(args)
    h = _h(args)
    count = flowpoly.partition_count(mult, h)
    return {"l": mult.l, "m": mult.as_json(), "h": str(h), "count": count}, str(count)


def cmd_volume(args):
    mult = _mult(args)
    h = _h(args)
    vol = flowpoly.ehrhart_volume(mult, h)
    return {"l": mult.l, "m": mult.as_json(), "h": str(h), "volume": str(vol)}, str(vol)


def cmd_volpoly(args):
    mult = _mult(args)
    v = _volume_poly(args, mult)
    return {"l": mult.l, "m": mult.as_json(), "polynomial": v.to_string()}, v.to_string()


def cmd_multiplicity(args):
    q = _query(args)
    value = multiplicity.tensor_weight_multiplicity(q)
    close = rootsys.sufficiently_close(q.lambdas, q.mu)
    payload = {"multiplicity": value, "reduced_to_partition_function": close}
    if close and not multiplicity.sufficiently_close_reduction_check(q):
        raise dualalgebra.FalsificationError("alternating sum does not collapse to p(lambda - mu)", payload)
    if args.kmax:
        payload["probe"] = [str(x) for x in multiplicity.asymptotic_volume_probe(q, args.kmax)]
    text = str(value)
    if "probe" in payload:
        text += "\n" + " ".join(payload["probe"])
    return payload, text


def cmd_close_check(args):
    q = _query(args)
    close = rootsys.sufficiently_close(q.lambdas, q.mu)
    diff = q.total - q.mu
    nice = rootsys.in_nice_chamber(diff)
    payload = {"sufficiently_close": close, "lambda_minus_mu": str(diff), "nice_chamber": nice}
    return payload, f"sufficiently close: {close}\nlambda - mu = {diff} (alpha), nice chamber: {nice}"


def cmd_betti(args):
    mult = _mult(args)
    report = dualalgebra.graded_algebra_report(_volume_poly(args, mult))
    if not report.is_poincare_duality():
        raise dualalgebra.FalsificationError("D/Ann(v) is not a Poincare duality algebra", report.to_json())
    text = ",".join(map(str, report.betti)) + "\n" + report.poincare_polynomial
    return report.to_json(), text


def cmd_pairings(args):
    mult = _mult(args)
    if not mult.is_uniform():
        raise ValueError("pairings need a uniform multiplicity (--n)")
    n = mult.entries[0]
    cmap = dualalgebra.MergedCoordinateMap(n, mult.l)
    raw = cmap.to_raw(_volume_poly(args, mult))
    names = cmap.raw_names()
    d = mult.dim
    if args.exponents:
        patterns = [tuple(_ints(args.exponents))]
    else:
        # the first raw generator to power d-1 times each generator in turn
        patterns = []
        for k in range(cmap.nraw):
            e = [0] * cmap.nraw
            e[0] += d - 1
            e[k] += 1
            patterns.append(tuple(e))
    rows = []
    for e in patterns:
        label = " ".join(f"{names[i]}^{x}" if x > 1 else names[i] for i, x in enumerate(e) if x)
        rows.append({"exponents": list(e), "monomial": label, "value": str(dualalgebra.intersection_pairing(raw, e))})
    text = "\n".join(f"{r['monomial']}: {r['value']}" for r in rows)
    return {"variables": names, "pairings": rows}, text


def cmd_annihilator(args):
    mult = _mult(args)
    v = _volume_poly(args, mult)
    degrees = [args.degree] if args.degree is not None else list(range(v.degree + 1))
    out = []
    for k in degrees:
        basis = dualalgebra.annihilator_degree(v, k)
        out.append({"degree": k, "basis": [op.to_string() for op in basis]})
    if len(out) == 1:
        payload = out[0]
    else:
        payload = {"annihilator": out}
    text = "\n".join(f"{row['degree']}: " + ", ".join(row["basis"]) for row in out)
    return payload, text


def cmd_solve_ode(args):
    mult = _mult(args)
    v = dualalgebra.solve_nice_volume(mult)
    return {"l": mult.l, "m": mult.as_json(), "polynomial": v.to_string()}, v.to_string()


def cmd_verify_gen(args):
    mult = _mult(args)
    report = dualalgebra.verify_generation(mult)
    payload = report.to_json()
    if not report.ok:
        raise dualalgebra.FalsificationError("Ann(v) is not generated by the nice-chamber operators", payload)
    lines = [f"degree {r['degree']}: ann {r['ann_dim']}, ideal {r['ideal_dim']}" for r in report.degrees]
    lines.append(f"witness coefficient of q^{report.witness_exponent}: {report.witness_coefficient}")
    return payload, "\n".join(lines)


def cmd_presentation(args):
    if args.l is None or args.n is None:
        raise ValueError("--l and --n are required")
    ideal = cohomring.presentation_ideal(args.l, args.n)
    hilbert = cohomring.hilbert_function(ideal)
    payload = {"generators": ideal.factored(), "hilbert": hilbert}
    return payload, "\n".join(ideal.factored()) + "\n" + ",".join(map(str, hilbert))


def cmd_cross_validate(args):
    if args.l is None or args.n is None:
        raise ValueError("--l and --n are required")
    result = cohomring.cross_validate(args.l, args.n)
    payload = result.to_json()
    text = f"hilbert {','.join(map(str, result.hilbert))}\nbetti {','.join(map(str, result.betti))}\nmatches: {result.ok}"
    return payload, text


COMMANDS = {
    "partition": cmd_partition,
    "volume": cmd_volume,
    "volpoly": cmd_volpoly,
    "multiplicity": cmd_multiplicity,
    "close-check": cmd_close_check,
    "betti": cmd_betti,
    "pairings": cmd_pairings,
    "annihilator": cmd_annihilator,
    "solve-ode": cmd_solve_ode,
    "verify-gen": cmd_verify_gen,
    "presentation": cmd_presentation,
    "cross-validate": cmd_cross_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flowcoh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--l", type=int, help="rank of A_l")
        p.add_argument("--n", type=int, help="uniform edge multiplicity / number of factors")
        p.add_argument("--m", help="multiplicities m_ij, comma list in lexicographic (i,j) order")
        p.add_argument("--h", help="alpha-coordinates of h, e.g. 1,2")
        p.add_argument("--lambda", dest="lam", action="append", help="highest weight (repeatable)")
        p.add_argument("--mu", help="weight mu")
        p.add_argument("--basis", choices=["alpha", "fundamental"], default="fundamental")
        p.add_argument("--chamber", choices=["nice", "custom"], default="nice")
        p.add_argument("--samples", help="custom chamber points, e.g. '2,1;3,1;3,2'")
        p.add_argument("--kmax", type=int)
        p.add_argument("--degree", type=int, help="operator degree (annihilator)")
        p.add_argument("--exponents", help="raw-variable exponents (pairings)")
        p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def run(args) -> int:
    try:
        payload, text = COMMANDS[args.command](args)
    except dualalgebra.FalsificationError as exc:
        print(f"FALSIFIED: {exc}", file=sys.stderr)
        if exc.report:
            print(json.dumps(exc.report), file=sys.stderr)
        return EXIT_FALSIFIED
    except (ValueError, InterpolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(emit_report(payload, args.format, text))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
