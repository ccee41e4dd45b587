"""JSON documents: kernel input, root-count and analysis reports.

Every rational crosses the boundary as a ``"p/q"`` string. Polynomial
coefficient lists are ascending in degree (constant term first).
"""

from __future__ import annotations

import json
import math
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .analyzer import AnalysisReport
from .discrimination import RootCountReport
from .exactnum import Polynomial, format_rational, parse_rational
from .kernel import KernelSpec, PiecewisePoly

KERNEL_SCHEMA_ID = "discrimina/kernel@1"
REPORT_SCHEMA_ID = "discrimina/report@1"


class DocumentError(ValueError):
    pass


def load_schema(name: str) -> dict:
    return json.loads(resources.files("discrimina").joinpath("schemas", name).read_text())


def parse_decimal(text) -> Fraction:
    """Exact value of a decimal literal such as ``"1e-12"``."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(Decimal(str(text)))
    except (InvalidOperation, ValueError) as exc:
        raise DocumentError(f"not a decimal number: {text!r}") from exc


def parse_factor(doc: dict, name: str) -> PiecewisePoly:
    try:
        if "maxAffine" in doc:
            first, second = ([parse_rational(c) for c in pair] for pair in doc["maxAffine"])
            return PiecewisePoly.max_affine(first, second)
        pieces = []
        for piece in doc["pieces"]:
            on = [parse_rational(e) for e in piece["on"]]
            pieces.append((on, Polynomial(parse_rational(c) for c in piece["coeffs"])))
        pieces.sort(key=lambda item: item[0])
        bp = [pieces[0][0][0]]
        for (lo, hi), _ in pieces:
            if lo != bp[-1]:
                raise DocumentError(f"{name}: pieces must tile [0, 1] without gaps (gap at {lo})")
            bp.append(hi)
        return PiecewisePoly(bp, [p for _, p in pieces])
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(f"{name}: {exc}") from exc


def parse_kernel_document(doc: dict) -> tuple:
    """Validate and convert a kernel document; returns ``(KernelSpec, mode, tol)``."""
    try:
        jsonschema.validate(doc, load_schema("kernel-v1.schema.json"))
    except jsonschema.ValidationError as exc:
        raise DocumentError(f"schema violation at {list(exc.absolute_path)}: {exc.message}") from exc
    factors = {name: parse_factor(doc[name], name) for name in ("phi1", "phi2", "psi1", "psi2")}
    mode = doc.get("mode", "exact")
    tol = parse_decimal(doc["tol"]) if "tol" in doc else None
    if mode == "numeric" and tol is None:
        raise DocumentError("numeric mode needs 'tol'")
    return KernelSpec(n=doc["n"], **factors), mode, tol


def load_kernel_document(path) -> tuple:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_kernel_document(doc)


def factor_to_document(f: PiecewisePoly) -> dict:
    return {
        "pieces": [
            {"on": [format_rational(lo), format_rational(hi)], "coeffs": [format_rational(c) for c in p.coeffs] or ["0"]}
            for (lo, hi), p in zip(zip(f.breakpoints, f.breakpoints[1:]), f.pieces)
        ]
    }


def kernel_to_document(k: KernelSpec, mode: str = "exact", tol=None) -> dict:
    doc = {"schema": KERNEL_SCHEMA_ID, "n": k.n, "mode": mode}
    if tol is not None:
        doc["tol"] = str(Decimal(Fraction(tol).numerator) / Decimal(Fraction(tol).denominator))
    for name, f in k.factors().items():
        doc[name] = factor_to_document(f)
    return doc


def parse_coefficients(items) -> Polynomial:
    if not isinstance(items, list):
        raise DocumentError("coefficients must be a JSON array (ascending degree)")
    try:
        return Polynomial(parse_rational(c) for c in items)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def _q(x) -> str:
    return format_rational(x)


def _qs(xs) -> list:
    return [_q(x) for x in xs]


def _header(command: str) -> dict:
    return {"tool": "discrimina", "version": __version__, "schema": REPORT_SCHEMA_ID, "command": command}


def root_count_to_dict(rep: RootCountReport) -> dict:
    return {
        "sign_list": list(rep.sign_list),
        "revised_sign_list": list(rep.revised),
        "mu": rep.mu,
        "nu": rep.nu,
        "count": rep.count,
        "flags": list(rep.flags),
    }


def count_real_document(f: Polynomial, rep: RootCountReport, values) -> dict:
    out = _header("count-real")
    out.update(polynomial=_qs(f.coeffs), degree=f.degree, discriminant_sequence=_qs(values))
    out.update(root_count_to_dict(rep))
    return out


def count_positive_document(f: Polynomial, zero_mult: int, reduced: Polynomial, rep) -> dict:
    out = _header("count-positive")
    out.update(polynomial=_qs(f.coeffs), degree=f.degree, zero_root_multiplicity=zero_mult,
               reduced_polynomial=_qs(reduced.coeffs))
    if rep is None:
        out.update(sign_list=[], revised_sign_list=[], mu=0, nu=0, count=0, flags=[])
    else:
        out.update(root_count_to_dict(rep))
    return out


def analysis_to_dict(r: AnalysisReport) -> dict:
    out = _header("analyze")
    out["mode"] = r.mode
    out["n"] = r.n
    out["classification"] = r.classification
    out["m"] = r.m
    out["certified"] = r.certified
    if r.possible_counts:
        out["possible_counts"] = list(r.possible_counts)
    mom = {"a": _qs(r.moments.a), "b": _qs(r.moments.b)}
    if not r.moments.exact:
        mom.update(a_err=_qs(r.moments.a_err), b_err=_qs(r.moments.b_err))
    out["moments"] = mom
    out["alpha"] = _qs(r.alpha.alpha)
    if r.n == 1:
        out["linear"] = {
            "determinant": _q(r.theorem1_determinant),
            "determinant_bound": None if r.theorem1_bound is None else _q(r.theorem1_bound),
            "direction": None if r.direction is None else _qs(r.direction),
        }
    else:
        out["discrimination"] = {
            "mu": r.mu,
            "nu": r.nu,
            "sign_list": list(r.sign_list),
            "revised_sign_list": list(r.revised_sign_list),
            "positive_sign_list": list(r.positive_sign_list),
            "positive_revised_sign_list": list(r.positive_revised_sign_list),
        }
    if r.cubic is not None:
        c = r.cubic
        out["cubic"] = {
            "p": _q(c.p), "r": _q(c.r), "t": _q(c.t),
            "delta1": _q(c.delta1), "delta2": _q(c.delta2), "delta3": _q(c.delta3),
            "d_list": _qs(c.d_list),
            "conditions": dict(r.cubic_conditions),
        }
    out["negative_count"] = "infinite" if r.negative_count == math.inf else r.negative_count
    out["solutions"] = [
        {
            "lambda1": _q(s.lambda1),
            "lambda2": _q(s.lambda2),
            "lambda1_approx": float(s.lambda1),
            "lambda2_approx": float(s.lambda2),
            "lambda1_width": _q(s.lambda1_width),
            "lambda2_width": _q(s.lambda2_width),
            "ratio_interval": [_q(s.root.lo), _q(s.root.hi)],
            "residual": None if s.residual is None else float(s.residual),
        }
        for s in r.solutions
    ]
    out["flags"] = list(r.flags)
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
