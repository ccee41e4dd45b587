"""Exact root isolation, bisection refinement and a Sturm-chain oracle.

Isolation uses Descartes' rule of signs on bisected intervals; the Sturm chain
is kept independent of it and of the discrimination system so that tests can
cross-check all three.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Polynomial, derivative, eval_poly, sign, square_free_part


@dataclass(frozen=True)
class Interval:
    """Closed enclosure ``[lo, hi]``; ``lo == hi`` marks an exactly hit root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def cauchy_bound(f: Polynomial) -> Fraction:
    if f.is_zero:
        raise ValueError("zero polynomial has no root bound")
    lead = abs(f.leading)
    return 1 + max((abs(a) / lead for a in f.coeffs[:-1]), default=Fraction(0))


def descartes_variations(f: Polynomial, a: Fraction, b: Fraction) -> int:
    """Sign variations bounding the number of roots of ``f`` in ``(a, b)``.

    Maps ``(a, b)`` onto ``(0, inf)`` by ``x = (a + b*y) / (1 + y)`` and counts
    coefficient sign changes; 0 or 1 is exact.
    """
    g = f.compose(Polynomial([a, b - a])).reversed().taylor_shift(1)
    signs = [sign(c) for c in g.coeffs if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def isolate_roots(f: Polynomial, lo, hi) -> list:
    """Isolating intervals for the distinct roots of ``f`` in the open ``(lo, hi)``.

    Intervals come back ascending; open ends never touch a root, exactly hit
    roots are zero-width.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if f.is_zero:
        raise ValueError("zero polynomial has no isolated roots")
    if f.degree < 1 or lo >= hi:
        return []
    q = square_free_part(f)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        v = descartes_variations(q, a, b)
        if v == 0:
            continue
        if v == 1:
            out.append(_clear_endpoints(q, a, b))
            continue
        m = (a + b) / 2
        if eval_poly(q, m) == 0:
            out.append(Interval(m, m))
        stack.append((m, b))
        stack.append((a, m))
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    return out


def _clear_endpoints(q: Polynomial, a: Fraction, b: Fraction) -> Interval:
    """Shrink ``(a, b)``, known to hold one simple root, until ``q(a), q(b) != 0``."""
    dq = derivative(q)
    sa = sign(eval_poly(q, a)) or sign(eval_poly(dq, a))
    while eval_poly(q, a) == 0 or eval_poly(q, b) == 0:
        m = (a + b) / 2
        sm = sign(eval_poly(q, m))
        if sm == 0:
            return Interval(m, m)
        if sm == sa:
            a = m
        else:
            b = m
    return Interval(a, b)


def isolate_positive_roots(f: Polynomial) -> list:
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree < 1:
        return []
    return isolate_roots(f, 0, cauchy_bound(f))


def bisect_step(q: Polynomial, iv: Interval) -> Interval:
    if iv.exact:
        return iv
    m = iv.mid
    sm = sign(eval_poly(q, m))
    if sm == 0:
        return Interval(m, m)
    if sm == sign(eval_poly(q, iv.lo)):
        return Interval(m, iv.hi)
    return Interval(iv.lo, m)


def refine_interval(f: Polynomial, iv: Interval, tol) -> Interval:
    """Bisect an isolating interval of ``f`` down to width ``<= tol``."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    q = square_free_part(f)
    if iv.exact:
        if eval_poly(q, iv.lo) != 0:
            raise ValueError(f"{iv.lo} is not a root")
        return iv
    slo, shi = sign(eval_poly(q, iv.lo)), sign(eval_poly(q, iv.hi))
    if slo == 0:
        return Interval(iv.lo, iv.lo)
    if shi == 0:
        return Interval(iv.hi, iv.hi)
    if slo == shi:
        raise ValueError(f"[{iv.lo}, {iv.hi}] does not bracket a sign change")
    while iv.width > tol:
        iv = bisect_step(q, iv)
    return iv


def refine_root(f: Polynomial, iv: Interval, tol) -> Fraction:
    return refine_interval(f, iv, tol).mid


def sturm_chain(f: Polynomial) -> list:
    q = square_free_part(f)
    chain = [q, derivative(q)]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if r.is_zero:
            break
        # positive rescaling keeps every sign pattern intact
        chain.append(r.primitive())
    return [p for p in chain if not p.is_zero]


def _variations(chain, x) -> int:
    signs = [sign(eval_poly(p, x)) for p in chain]
    signs = [s for s in signs if s != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_count(f: Polynomial, a, b) -> int:
    """Distinct real roots of ``f`` in the open interval ``(a, b)``."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("degenerate interval")
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree < 1:
        return 0
    chain = sturm_chain(f)
    # V(a) - V(b) counts roots in (a, b] even when f(a) == 0
    n = _variations(chain, a) - _variations(chain, b)
    if eval_poly(chain[0], b) == 0:
        n -= 1
    return n
