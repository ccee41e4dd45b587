"""Command line front end.

    discrimina count-real --coeffs '["-1", "0", "1"]'
    discrimina count-positive --coeffs poly.json
    discrimina analyze --input kernel.json [--solve] [--oracle] [--tol 1e-12] [--emit out.json]

Coefficient arrays are ascending in degree. Reports are JSON on stdout (or in
the ``--emit`` file, with a text summary on stdout).

Exit codes: 0 ok, 2 unreadable input or schema violation, 3 zero/constant
polynomial or kernel positivity violation, 4 oracle disagreement, 5 internal
consistency or quadrature failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .analyzer import ConsistencyError, OracleMismatch, analyze
from .discrimination import count_distinct_positive_roots, count_distinct_real_roots, discriminant_sequence
from .documents import (
    DocumentError,
    analysis_to_dict,
    count_positive_document,
    count_real_document,
    dumps,
    load_kernel_document,
    parse_coefficients,
    parse_decimal,
)
from .exactnum import Polynomial
from .kernel import PositivityError, QuadratureError

logger = logging.getLogger("discrimina")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_ORACLE = 4
EXIT_INTERNAL = 5


def _read_coeffs(arg: str) -> Polynomial:
    text = arg
    if not arg.lstrip().startswith("["):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise DocumentError(f"cannot read {arg}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON coefficients: {exc}") from exc
    if isinstance(data, dict) and "coeffs" in data:
        data = data["coeffs"]
    return parse_coefficients(data)


class DegenerateInput(ValueError):
    pass


def _require_nonconstant(f: Polynomial):
    if f.is_zero:
        raise DegenerateInput("zero polynomial")
    if f.degree < 1:
        raise DegenerateInput("constant polynomial has no roots to count")


def _emit(doc: dict, args, summary: str):
    if args.emit:
        Path(args.emit).write_text(dumps(doc))
        print(summary)
    elif args.format == "text":
        print(summary)
    else:
        sys.stdout.write(dumps(doc))


def cmd_count_real(args) -> int:
    f = _read_coeffs(args.coeffs)
    _require_nonconstant(f)
    rep = count_distinct_real_roots(f)
    doc = count_real_document(f, rep, discriminant_sequence(f).values)
    _emit(doc, args, f"{f}: {rep.count} distinct real root(s); revised sign list {list(rep.revised)}")
    return EXIT_OK


def cmd_count_positive(args) -> int:
    f = _read_coeffs(args.coeffs)
    _require_nonconstant(f)
    k = f.trailing_zero_order()
    reduced = Polynomial(f.coeffs[k:])
    rep = count_distinct_positive_roots(reduced) if reduced.degree >= 1 else None
    doc = count_positive_document(f, k, reduced, rep)
    count = rep.count if rep else 0
    extra = f" (zero root of multiplicity {k} stripped)" if k else ""
    _emit(doc, args, f"{f}: {count} distinct positive root(s){extra}")
    return EXIT_OK


def _summary(report) -> str:
    lines = [f"n = {report.n}, mode = {report.mode}: {report.classification}"]
    if report.m is not None:
        tag = "" if report.certified else f" (UNCERTIFIED; possible {list(report.possible_counts)})"
        lines.append(f"positive solutions: {report.m}{tag}")
        lines.append(f"revised sign list: {list(report.revised_sign_list)}")
    if report.direction is not None:
        l1, l2 = report.direction
        lines.append(f"family: c*({l1}*phi1 + {l2}*phi2), c > 0")
    for s in report.solutions:
        lines.append(f"  lambda1 = {float(s.lambda1):.12g}, lambda2 = {float(s.lambda2):.12g}, residual = {float(s.residual):.3g}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    kernel, mode, quad_tol = load_kernel_document(args.input)
    solve_tol = parse_decimal(args.tol)
    report = analyze(kernel, mode=mode, tol=quad_tol, solve=args.solve, solve_tol=solve_tol,
                     grid_points=args.grid_points, oracle=args.oracle)
    _emit(analysis_to_dict(report), args, _summary(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discrimina", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--emit", metavar="PATH", help="write the JSON report here and print a summary")

    for name, fn, help_ in (
        ("count-real", cmd_count_real, "count distinct real roots"),
        ("count-positive", cmd_count_positive, "count distinct positive roots"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--coeffs", required=True, help="JSON array (ascending degree) or a file holding one")
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("analyze", help="count (and construct) positive solutions for a kernel document")
    p.add_argument("--input", required=True, help="kernel document (JSON)")
    p.add_argument("--solve", action="store_true", help="construct the solutions and report residuals")
    p.add_argument("--oracle", action="store_true", help="cross-check counts with Sturm chains")
    p.add_argument("--tol", default="1e-12", help="enclosure width for constructed solutions")
    p.add_argument("--grid-points", type=int, default=1001)
    common(p)
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DegenerateInput, PositivityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (ConsistencyError, QuadratureError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
