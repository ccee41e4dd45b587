"""Rank-2 kernels on [0, 1]: piecewise-polynomial factors, moments, alpha vector.

A kernel ``k(x, y) = phi1(x)*psi1(y) + phi2(x)*psi2(y)`` reduces the integral
equation ``u(x) = int_0^1 k(x, y) u(y)**n dy`` to the moments

    a[i] = C(n, i) * int psi1 * phi1**(n-i) * phi2**i
    b[i] = C(n, i) * int psi2 * phi1**(n-i) * phi2**i      (i = 0..n)

and the coefficients ``alpha`` of ``sum_i alpha[i] * x**(n+1-i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .exactnum import Polynomial, eval_poly, sign
from .rootfind import Interval, isolate_roots


class PositivityError(ValueError):
    """A kernel factor is negative somewhere on [0, 1] or vanishes identically."""


class QuadratureError(RuntimeError):
    pass


class PiecewisePoly:
    """Continuous piecewise polynomial on [0, 1].

    ``pieces[k]`` is used on ``[breakpoints[k], breakpoints[k+1]]``; piece
    polynomials are in the global variable, not shifted.
    """

    __slots__ = ("breakpoints", "pieces")

    def __init__(self, breakpoints: Sequence, pieces: Sequence[Polynomial], check_continuity: bool = True):
        bp = tuple(Fraction(b) for b in breakpoints)
        pieces = tuple(p if isinstance(p, Polynomial) else Polynomial(p) for p in pieces)
        if len(bp) < 2 or bp[0] != 0 or bp[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly ascending")
        if len(pieces) != len(bp) - 1:
            raise ValueError("need exactly one piece per breakpoint interval")
        if check_continuity:
            for k in range(1, len(bp) - 1):
                if eval_poly(pieces[k - 1], bp[k]) != eval_poly(pieces[k], bp[k]):
                    raise ValueError(f"discontinuity at x = {bp[k]}")
        self.breakpoints = bp
        self.pieces = pieces

    @classmethod
    def constant(cls, c) -> "PiecewisePoly":
        return cls((0, 1), (Polynomial([c]),))

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "PiecewisePoly":
        return cls((0, 1), (p,))

    @classmethod
    def max_affine(cls, first: Sequence, second: Sequence) -> "PiecewisePoly":
        """``max(c0 + c1*x, d0 + d1*x)`` with the crossing solved exactly."""
        return pw_max(cls.from_polynomial(Polynomial(first)), cls.from_polynomial(Polynomial(second)))

    def __repr__(self) -> str:
        return f"PiecewisePoly({list(map(str, self.breakpoints))}, {list(self.pieces)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        grid = merge_grids(self.breakpoints, other.breakpoints)
        return self.refine(grid).pieces == other.refine(grid).pieces

    def piece_at(self, x) -> Polynomial:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError(f"{x} outside [0, 1]")
        for k in range(len(self.pieces)):
            if x <= self.breakpoints[k + 1]:
                return self.pieces[k]
        return self.pieces[-1]

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return eval_poly(self.piece_at(x), x)
        xs = np.asarray(x, dtype=float)
        out = np.empty_like(xs)
        idx = np.searchsorted([float(b) for b in self.breakpoints[1:-1]], xs, side="left")
        for k, p in enumerate(self.pieces):
            mask = idx == k
            if mask.any():
                out[mask] = np.polynomial.polynomial.polyval(xs[mask], [float(c) for c in p.coeffs] or [0.0])
        return out if out.ndim else float(out)

    def refine(self, grid: Sequence[Fraction]) -> "PiecewisePoly":
        """Same function on a finer breakpoint grid (must contain ours)."""
        grid = tuple(grid)
        if not set(self.breakpoints) <= set(grid):
            raise ValueError("refinement grid must contain the existing breakpoints")
        pieces = [self.piece_at((a + b) / 2) for a, b in zip(grid, grid[1:])]
        return PiecewisePoly(grid, pieces, check_continuity=False)

    def map_pieces(self, fn: Callable[[Polynomial], Polynomial]) -> "PiecewisePoly":
        return PiecewisePoly(self.breakpoints, [fn(p) for p in self.pieces], check_continuity=False)

    def __mul__(self, other) -> "PiecewisePoly":
        if isinstance(other, (int, Fraction)):
            return self.map_pieces(lambda p: p.scale(other))
        return pw_multiply(self, other)

    __rmul__ = __mul__

    def __add__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        grid = merge_grids(self.breakpoints, other.breakpoints)
        f, g = self.refine(grid), other.refine(grid)
        return PiecewisePoly(grid, [p + q for p, q in zip(f.pieces, g.pieces)], check_continuity=False)

    def __pow__(self, k: int) -> "PiecewisePoly":
        return self.map_pieces(lambda p: p ** k)

    def simplify(self) -> "PiecewisePoly":
        """Drop breakpoints between identical pieces."""
        bp, pieces = [self.breakpoints[0]], [self.pieces[0]]
        for b, p in zip(self.breakpoints[1:-1], self.pieces[1:]):
            if p == pieces[-1]:
                continue
            bp.append(b)
            pieces.append(p)
        bp.append(Fraction(1))
        return PiecewisePoly(bp, pieces, check_continuity=False)

    def check_nonnegative(self, name: str = "factor"):
        """Raise :class:`PositivityError` unless >= 0 on [0, 1] and not identically 0."""
        positive_somewhere = False
        for (lo, hi), p in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            for x in sample_points_between_roots(p, lo, hi):
                s = sign(eval_poly(p, x))
                if s < 0:
                    raise PositivityError(f"{name} is negative at x = {x}")
                positive_somewhere |= s > 0
        if not positive_somewhere:
            raise PositivityError(f"{name} vanishes identically on [0, 1]")


def merge_grids(*grids) -> tuple:
    return tuple(sorted(set().union(*(map(Fraction, g) for g in grids))))


def sample_points_between_roots(p: Polynomial, lo: Fraction, hi: Fraction) -> list:
    """Points of ``[lo, hi]`` hitting every root-free gap of ``p`` at least once.

    Inexact enclosures from :func:`isolate_roots` have non-root endpoints, so
    all enclosure edges plus the midpoints between consecutive edges suffice.
    """
    if p.is_zero or p.degree < 1:
        return [lo, (lo + hi) / 2, hi]
    edges = sorted({lo, hi, *(e for iv in isolate_roots(p, lo, hi) for e in (iv.lo, iv.hi))})
    pts = set(edges)
    pts.update((a + b) / 2 for a, b in zip(edges, edges[1:]))
    return sorted(pts)


def pw_max(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    """Pointwise maximum; every sign-changing crossing must be rational."""
    grid = merge_grids(f.breakpoints, g.breakpoints)
    f, g = f.refine(grid), g.refine(grid)
    bp, pieces = [Fraction(0)], []
    for (lo, hi), p, q in zip(zip(grid, grid[1:]), f.pieces, g.pieces):
        diff = p - q
        cuts = [lo]
        if not diff.is_zero and diff.degree >= 1:
            for iv in isolate_roots(diff, lo, hi):
                root = _rational_crossing(diff, iv)
                if root is not None:
                    cuts.append(root)
        cuts.append(hi)
        for a, b in zip(cuts, cuts[1:]):
            m = (a + b) / 2
            pieces.append(p if eval_poly(diff, m) >= 0 else q)
            bp.append(b)
    return PiecewisePoly(bp, pieces).simplify()


def _rational_crossing(diff: Polynomial, iv: Interval) -> Optional[Fraction]:
    if iv.exact:
        return iv.lo
    if sign(eval_poly(diff, iv.lo)) == sign(eval_poly(diff, iv.hi)):
        return None  # touches without crossing
    if diff.degree == 1:
        root = -diff[0] / diff[1]
    else:
        # rational root theorem candidates inside the enclosure
        root = _rational_root_in(diff, iv)
        if root is None:
            raise ValueError(f"crossing in ({iv.lo}, {iv.hi}) is not rational; split the input by hand")
    return root


def _rational_root_in(p: Polynomial, iv: Interval) -> Optional[Fraction]:
    prim = p.primitive()
    lead, const = abs(int(prim.leading)), abs(int(prim[prim.trailing_zero_order()]))
    for den in _divisors(lead):
        lo_num = math.floor(iv.lo * den)
        for num in range(lo_num, math.ceil(iv.hi * den) + 1):
            x = Fraction(num, den)
            if iv.lo <= x <= iv.hi and num != 0 and const % abs(x.numerator) == 0 and eval_poly(p, x) == 0:
                return x
    return None


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def pw_multiply(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    grid = merge_grids(f.breakpoints, g.breakpoints)
    f, g = f.refine(grid), g.refine(grid)
    return PiecewisePoly(grid, [p * q for p, q in zip(f.pieces, g.pieces)], check_continuity=False)


def pw_integrate01(f: PiecewisePoly) -> Fraction:
    total = Fraction(0)
    for (lo, hi), p in zip(zip(f.breakpoints, f.breakpoints[1:]), f.pieces):
        F = p.integrate()
        total += eval_poly(F, hi) - eval_poly(F, lo)
    return total


@dataclass(frozen=True)
class KernelSpec:
    phi1: PiecewisePoly
    phi2: PiecewisePoly
    psi1: PiecewisePoly
    psi2: PiecewisePoly
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")

    def factors(self) -> dict:
        return {"phi1": self.phi1, "phi2": self.phi2, "psi1": self.psi1, "psi2": self.psi2}

    def check_positivity(self):
        for name, f in self.factors().items():
            f.check_nonnegative(name)

    def swapped(self) -> "KernelSpec":
        return KernelSpec(self.phi2, self.phi1, self.psi2, self.psi1, self.n)


@dataclass(frozen=True)
class MomentTable:
    """``a[i]`` is a_{n-i,i} and ``b[i]`` is b_{n-i,i}; errors are set in numeric mode."""

    a: tuple
    b: tuple
    n: int
    a_err: Optional[tuple] = None
    b_err: Optional[tuple] = None

    def __post_init__(self):
        if len(self.a) != self.n + 1 or len(self.b) != self.n + 1:
            raise ValueError("moment rows must have n+1 entries")
        if any(v < 0 for v in self.a + self.b):
            raise ValueError("moments of nonnegative factors cannot be negative")

    @property
    def exact(self) -> bool:
        return self.a_err is None


@dataclass(frozen=True)
class AlphaVector:
    alpha: tuple
    err: Optional[tuple] = None

    def __post_init__(self):
        if len(self.alpha) < 2:
            raise ValueError("alpha needs at least two entries")
        if self.alpha[0] <= 0:
            raise ValueError(f"alpha[0] must be positive, got {self.alpha[0]}")
        if self.alpha[-1] >= 0:
            raise ValueError(f"alpha[-1] must be negative, got {self.alpha[-1]}")

    @property
    def n(self) -> int:
        return len(self.alpha) - 2

    def __len__(self) -> int:
        return len(self.alpha)

    def __getitem__(self, i):
        return self.alpha[i]

    def __iter__(self):
        return iter(self.alpha)

    def polynomial(self) -> Polynomial:
        """``sum_i alpha[i] * x**(n+1-i)``."""
        return Polynomial.from_descending(self.alpha)

    def even_polynomial(self) -> Polynomial:
        """``sum_i alpha[i] * s**(2(n+1-i))``."""
        return self.polynomial().in_square()


def compute_moments(k: KernelSpec) -> MomentTable:
    k.check_positivity()
    n = k.n
    a, b = [], []
    # phi1**(n-i) * phi2**i, built from cached powers
    p1 = [PiecewisePoly.constant(1)]
    p2 = [PiecewisePoly.constant(1)]
    for _ in range(n):
        p1.append(p1[-1] * k.phi1)
        p2.append(p2[-1] * k.phi2)
    for i in range(n + 1):
        base = p1[n - i] * p2[i]
        c = math.comb(n, i)
        a.append(c * pw_integrate01(k.psi1 * base))
        b.append(c * pw_integrate01(k.psi2 * base))
    return MomentTable(tuple(a), tuple(b), n)


def assemble_alpha(m: MomentTable) -> AlphaVector:
    n = m.n
    alpha = [m.b[0]] + [m.b[i] - m.a[i - 1] for i in range(1, n + 1)] + [-m.a[n]]
    err = None
    if not m.exact:
        err = [m.b_err[0]] + [m.b_err[i] + m.a_err[i - 1] for i in range(1, n + 1)] + [m.a_err[n]]
        err = tuple(err)
    return AlphaVector(tuple(alpha), err)


# ---------------------------------------------------------------- numeric path

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def _gauss(f, a: float, b: float) -> float:
    h = (b - a) / 2
    return h * float(np.dot(_GL_WEIGHTS, f(h * _GL_NODES + (a + b) / 2)))


def adaptive_integrate(f, a: float, b: float, tol: float, max_intervals: int = 20000):
    """Adaptive Gauss-Legendre with halving; returns ``(value, error_estimate)``.

    Each interval compares the 10-point rule against the sum over its two
    halves and is accepted once the difference fits its share of ``tol``.
    """
    total, err = 0.0, 0.0
    whole = _gauss(f, a, b)
    stack = [(a, b, whole)]
    n_done = 0
    while stack:
        lo, hi, q1 = stack.pop()
        m = (lo + hi) / 2
        left, right = _gauss(f, lo, m), _gauss(f, m, hi)
        q2 = left + right
        e = abs(q2 - q1)
        if e <= tol * (hi - lo) / (b - a):
            total += q2
            err += e
            continue
        n_done += 1
        if n_done > max_intervals:
            raise QuadratureError(f"no convergence to {tol:g} within {max_intervals} subdivisions")
        stack.append((m, hi, right))
        stack.append((lo, m, left))
    return total, err


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational in ``[lo, hi]`` via continued fractions."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo, hi share the integer part; recurse on reciprocals of the fractional parts
    return fl + 1 / simplest_rational_between(1 / (hi - fl), 1 / (lo - fl))


def _vectorize(fn):
    def call(ys):
        try:
            out = np.asarray(fn(ys), dtype=float)
            if out.shape == np.shape(ys):
                return out
        except Exception:
            pass
        return np.array([float(fn(float(y))) for y in np.ravel(ys)]).reshape(np.shape(ys))

    return call


def numeric_moments(phi1, phi2, psi1, psi2, n: int, tol) -> MomentTable:
    """Moments of black-box factors by adaptive quadrature.

    Each moment is rationalized to the simplest fraction within the remaining
    tolerance band, so every reported error bound is ``tol``.
    """
    tol = float(tol)
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    if n < 1:
        raise ValueError("n must be a positive integer")
    f1, f2, g1, g2 = (_vectorize(f) for f in (phi1, phi2, psi1, psi2))
    a, b, a_err, b_err = [], [], [], []
    for i in range(n + 1):
        c = math.comb(n, i)
        for psi, vals, errs in ((g1, a, a_err), (g2, b, b_err)):
            def integrand(y, psi=psi, i=i, c=c):
                return c * psi(y) * f1(y) ** (n - i) * f2(y) ** i

            v, e = adaptive_integrate(integrand, 0.0, 1.0, tol / 2)
            e += 16 * np.finfo(float).eps * max(abs(v), 1.0)
            if e >= tol:
                raise QuadratureError(f"error estimate {e:g} exceeds tolerance {tol:g}")
            center = Fraction(v)
            band = Fraction(tol) - Fraction(e)
            q = simplest_rational_between(max(center - band, Fraction(0)), center + band)
            vals.append(q)
            errs.append(Fraction(tol))
    return MomentTable(tuple(a), tuple(b), n, tuple(a_err), tuple(b_err))
