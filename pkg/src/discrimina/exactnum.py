"""Exact rationals, dense univariate polynomials and fraction-free determinants.

Rationals are :class:`fractions.Fraction`. Polynomials store coefficients in
ascending degree order; ``Polynomial.from_descending`` accepts the textbook
``a0*x**n + ... + an`` layout.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a canonical Fraction.

    Floats and decimal strings are rejected so that no binary rounding can
    leak into exact computations. The unicode minus sign is accepted.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational literal: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"not a rational literal: {value!r} (use a 'p/q' string)")
    m = _RATIONAL_RE.match(value.replace("−", "-"))
    if m is None:
        raise ValueError(f"not a rational literal: {value!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def sign(x) -> int:
    return (x > 0) - (x < 0)


class Polynomial:
    """Immutable dense polynomial over Q, coefficients ascending.

    The zero polynomial has ``coeffs == ()`` and ``degree == -1``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [Fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def from_descending(cls, coeffs: Iterable[Number]) -> "Polynomial":
        return cls(list(coeffs)[::-1])

    @classmethod
    def monomial(cls, k: int, coeff: Number = 1) -> "Polynomial":
        return cls([0] * k + [coeff])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def descending(self) -> list:
        return list(self._c[::-1])

    def __getitem__(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(format_rational(a) for a in self._c)}])"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = self._c[k]
            if a == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = format_rational(abs(a)) + (("*" + mono) if mono else "")
            terms.append(("-" if a < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-a for a in self._c)

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result, base = Polynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        other = _as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        lc = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            q = rem[k] / lc
            if q:
                quot[k - dq] = q
                for j, b in enumerate(other._c):
                    rem[k - dq + j] -= q * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def __call__(self, x):
        return eval_poly(self, x)

    def scale(self, c: Number) -> "Polynomial":
        return Polynomial(Fraction(c) * a for a in self._c)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValueError("zero polynomial has no monic form")
        return self.scale(1 / self.leading)

    def primitive(self) -> "Polynomial":
        """Positive rescaling to coprime integer coefficients (sign of lead kept)."""
        if self.is_zero:
            return self
        den = math.lcm(*(a.denominator for a in self._c))
        ints = [int(a * den) for a in self._c]
        g = math.gcd(*ints)
        return Polynomial(Fraction(a, g) for a in ints)

    def compose(self, other: "Polynomial") -> "Polynomial":
        """``self(other(x))`` by Horner's scheme."""
        other = _as_poly(other)
        out = Polynomial()
        for a in reversed(self._c):
            out = out * other + a
        return out

    def reflect(self) -> "Polynomial":
        """``self(-x)``."""
        return Polynomial(a if k % 2 == 0 else -a for k, a in enumerate(self._c))

    def in_square(self) -> "Polynomial":
        """``self(x**2)``."""
        out = []
        for a in self._c:
            out.extend((a, Fraction(0)))
        return Polynomial(out)

    def reversed(self) -> "Polynomial":
        """``x**deg * self(1/x)``."""
        return Polynomial(self._c[::-1])

    def taylor_shift(self, c: Number) -> "Polynomial":
        """``self(x + c)`` via repeated synthetic division."""
        a = list(self._c)
        c = Fraction(c)
        n = len(a)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                a[k] += c * a[k + 1]
        return Polynomial(a)

    def integrate(self) -> "Polynomial":
        """Antiderivative with zero constant term."""
        return Polynomial([0] + [a / (k + 1) for k, a in enumerate(self._c)])

    def trailing_zero_order(self) -> int:
        for k, a in enumerate(self._c):
            if a != 0:
                return k
        raise ValueError("zero polynomial")


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (int, Fraction)):
        return Polynomial([p])
    raise TypeError(f"cannot treat {type(p).__name__} as a polynomial")


def derivative(p: Polynomial) -> Polynomial:
    return Polynomial(k * a for k, a in enumerate(p.coeffs) if k > 0)


def eval_poly(p: Polynomial, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
    for a in reversed(p.coeffs):
        acc = acc * x + a
    return acc


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd by Euclid's algorithm, taking primitive parts at each step."""
    a, b = f.primitive(), g.primitive()
    while not b.is_zero:
        a, b = b, (a % b).primitive()
    if a.is_zero:
        return a
    return a.monic()


def square_free_part(p: Polynomial) -> Polynomial:
    """Monic ``p / gcd(p, p')``: same distinct roots, all simple."""
    if p.is_zero:
        raise ValueError("square-free part of the zero polynomial is undefined")
    if p.degree == 0:
        return Polynomial([1])
    g = poly_gcd(p, derivative(p))
    q, r = divmod(p, g)
    assert r.is_zero
    return q.monic()


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(Fraction(a) for r in rows for a in r))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


def bareiss_det(rows: list) -> int:
    """Determinant of a square integer matrix by Bareiss elimination.

    Row swaps are used for zero pivots; every division is exact.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    s = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    s = -s
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return s * m[n - 1][n - 1]


def principal_minor_sequence(M: ExactMatrix, orders: Iterable[int] | None = None) -> list:
    """Leading principal minors of ``M``; entry ``k-1`` is the order-``k`` minor.

    Each row is cleared to integers by its positive lcm of denominators and the
    minors are computed with :func:`bareiss_det`, then divided back, so the
    returned values are the exact minors. ``orders`` restricts the computation
    to the listed orders (others are returned as ``None``).
    """
    if not M.is_square:
        raise ValueError(f"principal minors need a square matrix, got {M.rows}x{M.cols}")
    n = M.rows
    int_rows, scales = [], []
    for i in range(n):
        r = M.row(i)
        den = math.lcm(*(a.denominator for a in r)) if r else 1
        int_rows.append([int(a * den) for a in r])
        scales.append(den)
    wanted = set(range(1, n + 1)) if orders is None else set(orders)
    out = []
    scale = 1
    for k in range(1, n + 1):
        scale *= scales[k - 1]
        if k in wanted:
            det = bareiss_det([row[:k] for row in int_rows[:k]])
            out.append(Fraction(det, scale))
        else:
            out.append(None)
    return out
