"""Complete discrimination system of a univariate polynomial.

``discrimination_matrix(f)`` for ``deg f = n`` is the (2n+1)x(2n+1) matrix whose
rows alternate the descending coefficients of ``f`` and ``f'``, shifting one
column right after every ``(f, f')`` pair and ending on a row of ``f``. Its
leading minors of even order 2k are the discriminant sequence ``D_k``; all
2n+1 leading minors feed the positive-root criterion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum import ExactMatrix, Polynomial, derivative, principal_minor_sequence, sign


@dataclass(frozen=True)
class RootCountReport:
    mu: int
    nu: int
    count: int
    sign_list: tuple
    revised: tuple
    flags: tuple = field(default=())
    # each counted root contributes ``weight`` to mu - 2*nu
    weight: int = 1

    def __post_init__(self):
        if self.count * self.weight != self.mu - 2 * self.nu or self.count < 0:
            raise ArithmeticError(f"inconsistent root count report: {self}")


@dataclass(frozen=True)
class DiscriminantSequence:
    values: tuple
    signs: tuple


def _require_nonconstant(f: Polynomial):
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree < 1:
        raise ValueError("constant polynomial")


def discrimination_matrix(f: Polynomial) -> ExactMatrix:
    _require_nonconstant(f)
    n = f.degree
    size = 2 * n + 1
    frow = f.descending()
    drow = [Fraction(0)] + derivative(f).descending()
    rows = []
    for k in range(n + 1):
        rows.append([Fraction(0)] * k + frow + [Fraction(0)] * (size - k - n - 1))
        if k < n:
            rows.append([Fraction(0)] * k + drow + [Fraction(0)] * (size - k - n - 1))
    return ExactMatrix.from_rows(rows)


def discriminant_sequence(f: Polynomial) -> DiscriminantSequence:
    n = f.degree
    M = discrimination_matrix(f)
    minors = principal_minor_sequence(M, orders=range(2, 2 * n + 1, 2))
    values = tuple(minors[2 * k - 1] for k in range(1, n + 1))
    return DiscriminantSequence(values, tuple(sign(v) for v in values))


def revise_sign_list(s: Sequence[int]) -> tuple:
    """Fill every zero run bounded by nonzeros ``s_i`` and ``s_{i+j}``.

    Entry ``i+r`` becomes ``(-1)**((r+1)//2) * s_i``; leading and trailing zero
    runs are left alone.
    """
    out = list(s)
    last = None
    for k, v in enumerate(s):
        if v == 0:
            continue
        if last is not None and k - last > 1:
            for r in range(1, k - last):
                out[last + r] = (-1) ** ((r + 1) // 2) * s[last]
        last = k
    return tuple(out)


def count_changes(seq: Sequence[int]) -> int:
    """Sign changes between consecutive nonzero entries."""
    nz = [v for v in seq if v != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def report_from_signs(signs: Sequence[int], flags=(), weight: int = 1) -> RootCountReport:
    signs = tuple(signs)
    revised = revise_sign_list(signs)
    mu = sum(1 for v in revised if v != 0)
    nu = count_changes(revised)
    return RootCountReport(mu, nu, (mu - 2 * nu) // weight, signs, revised, tuple(flags), weight)


def count_distinct_real_roots(f: Polynomial) -> RootCountReport:
    _require_nonconstant(f)
    return report_from_signs(discriminant_sequence(f).signs)


def positive_root_minors(f: Polynomial) -> list:
    """All 2n+1 leading minors of ``Discr(f(-x))``."""
    _require_nonconstant(f)
    return principal_minor_sequence(discrimination_matrix(f.reflect()))


def positive_sign_list(minor_signs: Sequence[int]) -> tuple:
    return tuple(a * b for a, b in zip(minor_signs, minor_signs[1:]))


def count_distinct_positive_roots(f: Polynomial) -> RootCountReport:
    """Distinct positive roots from the products of consecutive minors of Discr(f(-x)).

    The 2n products behave like the discriminant sequence of ``f(x**2)``, so
    every positive root contributes two to ``mu - 2*nu`` and the report halves
    it. Requires nonzero leading and constant coefficients; strip zero roots
    first.
    """
    _require_nonconstant(f)
    if f[0] == 0:
        raise ValueError("zero constant term: factor out x**k before counting positive roots")
    d = [sign(v) for v in positive_root_minors(f)]
    signs = positive_sign_list(d)
    flags = ("leading-zero-product",) if signs and signs[0] == 0 else ()
    return report_from_signs(signs, flags, weight=2)


@dataclass(frozen=True)
class CubicInvariants:
    p: Fraction
    r: Fraction
    t: Fraction
    delta1: Fraction
    delta2: Fraction
    delta3: Fraction
    d_list: tuple

    @property
    def d_signs(self) -> tuple:
        return tuple(sign(v) for v in self.d_list)


def cubic_invariants(alpha: Sequence) -> CubicInvariants:
    if len(alpha) != 4:
        raise ValueError("cubic invariants need exactly four coefficients")
    a0, a1, a2, a3 = (Fraction(a) for a in alpha)
    if a0 <= 0:
        raise ValueError("leading coefficient must be positive")
    p, r, t = a1 / a0, a2 / a0, a3 / a0
    if t >= 0:
        raise ValueError("constant-to-leading ratio must be negative")
    d1 = p * p - 3 * r
    d2 = r * p * p + 3 * t * p - 4 * r * r
    d3 = -4 * r ** 3 + 18 * r * t * p + p * p * r * r - 4 * p ** 3 * t - 27 * t * t
    d_list = (Fraction(1), -p, -p * d1, d1 * d2, d2 * d3, -t * d3 * d3)
    return CubicInvariants(p, r, t, d1, d2, d3, d_list)
