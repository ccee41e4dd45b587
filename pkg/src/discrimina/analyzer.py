"""Counting and constructing positive solutions of the rank-2 integral equation.

For ``n == 1`` the equation is linear and solutions come as a ray or not at
all. For ``n >= 2`` the positive solutions are in bijection with the positive
roots ``x`` of ``g(x) = sum_i alpha[i] * x**(n+1-i)``: with
``A(x) = sum_i a[i] * x**(n-i)`` and ``c = (x / A(x))**(1/(n-1))`` the solution
is ``c*x*phi1 + c*phi2``.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .discrimination import (
    CubicInvariants,
    RootCountReport,
    count_distinct_positive_roots,
    count_distinct_real_roots,
    cubic_invariants,
    discrimination_matrix,
    positive_sign_list,
    report_from_signs,
)
from .exactnum import Polynomial, eval_poly, principal_minor_sequence, sign
from .kernel import (
    AlphaVector,
    KernelSpec,
    MomentTable,
    PiecewisePoly,
    assemble_alpha,
    compute_moments,
    numeric_moments,
    pw_integrate01,
)
from .rootfind import Interval, cauchy_bound, isolate_positive_roots, refine_interval, sturm_count

logger = logging.getLogger(__name__)

NO_POSITIVE = "NoPositiveSolutions"
INFINITE_FAMILY = "InfiniteFamily"
FINITE_COUNT = "FiniteCount"


class ConsistencyError(RuntimeError):
    """Two independent routes to the same count disagreed."""


class OracleMismatch(ConsistencyError):
    pass


@dataclass(frozen=True)
class LinearCase:
    classification: str
    direction: Optional[tuple]
    determinant: Fraction
    det_bound: Fraction = Fraction(0)
    certified: bool = True


def analyze_n1(m: MomentTable) -> LinearCase:
    """Classify ``n == 1``: a ray ``c*(l1*phi1 + l2*phi2)`` with ``l1 + l2 == 1``, or nothing.

    In numeric mode the determinant test cannot be exact; the result is then
    certified only when the data rule a family out beyond the error bounds.
    """
    if m.n != 1:
        raise ValueError(f"linear analysis needs n == 1, got n == {m.n}")
    a10, a01 = m.a
    b10, b01 = m.b
    det = (a10 - 1) * (b01 - 1) - a01 * b10
    direction = None
    if a10 < 1 and det == 0:
        s = a01 + 1 - a10
        direction = (a01 / s, (1 - a10) / s)
    if m.exact:
        cls = INFINITE_FAMILY if direction else NO_POSITIVE
        return LinearCase(cls, direction, det)
    ea10, ea01 = m.a_err
    eb10, eb01 = m.b_err
    bound = (ea10 * abs(b01 - 1) + eb01 * abs(a10 - 1) + ea10 * eb01
             + ea01 * abs(b10) + eb10 * abs(a01) + ea01 * eb10)
    ruled_out = a10 - ea10 >= 1 or abs(det) > bound
    cls = INFINITE_FAMILY if direction else NO_POSITIVE
    return LinearCase(cls, direction, det, bound, certified=ruled_out and cls == NO_POSITIVE)


@dataclass(frozen=True)
class SolutionCount:
    m: int
    even_path: RootCountReport
    direct_path: RootCountReport
    certified: bool = True
    possible_counts: tuple = ()


def _check_bounds(m: int, n: int):
    if not 1 <= m <= n + 1:
        raise ConsistencyError(f"count {m} outside [1, {n + 1}] for n = {n}")
    if n > 2 and n % 2 == 1 and m > n:
        raise ConsistencyError(f"count {m} exceeds n = {n} for odd n")


def count_positive_solutions(alpha: AlphaVector, n: int) -> SolutionCount:
    """Count by both routes and insist they agree.

    The even route applies the real-root criterion to ``g(s**2)`` and halves;
    the direct route applies the positive-root criterion to ``g``.
    """
    if n < 2:
        raise ValueError("finite counts need n >= 2")
    if len(alpha) != n + 2:
        raise ValueError(f"alpha must have n+2 = {n + 2} entries")
    g = alpha.polynomial()
    even = count_distinct_real_roots(alpha.even_polynomial())
    direct = count_distinct_positive_roots(g)
    if even.count % 2:
        raise ConsistencyError(f"odd real-root count {even.count} for an even polynomial")
    m = even.count // 2
    if m != direct.count:
        raise ConsistencyError(f"routes disagree: even route {m}, direct route {direct.count}")
    _check_bounds(m, n)
    if alpha.err is None:
        return SolutionCount(m, even, direct)
    possible = _possible_counts(alpha, n)
    return SolutionCount(m, even, direct, certified=possible == (m,), possible_counts=possible)


def _minor_perturbation_bounds(alpha: AlphaVector) -> list:
    """Upper bounds on how far each leading minor of Discr(g(-x)) can move.

    Row-wise multilinearity plus Hadamard's inequality: with row norms ``|a_i|``
    and perturbation row norms ``|e_i|`` the order-k minor moves by at most
    ``prod(|a_i| + |e_i|) - prod(|a_i|)``.
    """
    h = alpha.polynomial().reflect()
    n1 = h.degree
    err_desc = list(alpha.err)  # descending, same magnitudes after reflection
    M = discrimination_matrix(h)
    size = M.rows
    drow = [0.0] + [float((n1 - j) * err_desc[j]) for j in range(n1)]
    frow = [float(e) for e in err_desc]
    err_rows = []
    for k in range(n1 + 1):
        err_rows.append([0.0] * k + frow + [0.0] * (size - k - n1 - 1))
        if k < n1:
            err_rows.append([0.0] * k + drow + [0.0] * (size - k - n1 - 1))
    inflate = 1 + 1e-9
    bounds = []
    for k in range(1, size + 1):
        pa, pae = 1.0, 1.0
        for i in range(k):
            ra = math.sqrt(sum(float(x) ** 2 for x in M.row(i)[:k])) * inflate
            re = math.sqrt(sum(x * x for x in err_rows[i][:k])) * inflate
            pa *= ra
            pae *= ra + re
        bounds.append(Fraction((pae - pa) * inflate))
    return bounds


def _possible_counts(alpha: AlphaVector, n: int, max_uncertain: int = 8) -> tuple:
    minors = principal_minor_sequence(discrimination_matrix(alpha.polynomial().reflect()))
    bounds = _minor_perturbation_bounds(alpha)
    signs = [sign(d) if abs(d) > b else None for d, b in zip(minors, bounds)]
    unknown = [i for i, s in enumerate(signs) if s is None]
    if not unknown:
        return (count_distinct_positive_roots(alpha.polynomial()).count,)
    if len(unknown) > max_uncertain:
        top = n if (n > 2 and n % 2) else n + 1
        return tuple(range(1, top + 1))
    found = set()
    for choice in itertools.product((-1, 0, 1), repeat=len(unknown)):
        trial = list(signs)
        for i, s in zip(unknown, choice):
            trial[i] = s
        try:
            m = report_from_signs(positive_sign_list(trial), weight=2).count
            _check_bounds(m, n)
        except (ArithmeticError, ConsistencyError):
            continue
        found.add(m)
    return tuple(sorted(found))


@dataclass(frozen=True)
class CubicClassification:
    m: int
    conditions: dict
    invariants: CubicInvariants


def classify_cubic(alpha) -> CubicClassification:
    """Closed-form conditions for the quadratic-power case.

    Three solutions iff p < 0 and all three deltas are positive; two iff the
    last delta is zero instead; one otherwise.
    """
    inv = cubic_invariants(list(alpha))
    base = inv.p < 0 and inv.delta1 > 0 and inv.delta2 > 0
    cond = {
        "three": base and inv.delta3 > 0,
        "two": base and inv.delta3 == 0,
        "one": inv.p >= 0 or inv.delta1 <= 0 or inv.delta2 <= 0 or inv.delta3 < 0,
    }
    m = 3 if cond["three"] else 2 if cond["two"] else 1
    if sum(cond.values()) != 1:
        raise ConsistencyError(f"cubic conditions not mutually exclusive: {cond}")
    av = alpha if isinstance(alpha, AlphaVector) else AlphaVector(tuple(Fraction(a) for a in alpha))
    general = count_positive_solutions(av, 2).m
    if general != m:
        raise ConsistencyError(f"cubic conditions give {m}, discrimination system gives {general}")
    return CubicClassification(m, cond, inv)


@dataclass(frozen=True)
class SolutionCandidate:
    lambda1: Fraction
    lambda2: Fraction
    lambda1_width: Fraction
    lambda2_width: Fraction
    root: Interval
    residual: Optional[Fraction] = None

    def __post_init__(self):
        if self.lambda1 <= 0 or self.lambda2 <= 0:
            raise ValueError("solution coefficients must be positive")


def _exact_root(p: Fraction, k: int) -> Optional[Fraction]:
    if k == 1:
        return p
    num, den = p.numerator, p.denominator
    rn, rd = round(num ** (1 / k)), round(den ** (1 / k))
    for cn in (rn - 1, rn, rn + 1):
        for cd in (rd - 1, rd, rd + 1):
            if cn > 0 and cd > 0 and cn ** k == num and cd ** k == den:
                return Fraction(cn, cd)
    return None


def kth_root_enclosure(lo: Fraction, hi: Fraction, k: int, tol: Fraction) -> tuple:
    """``(r_lo, r_hi)`` with ``r_lo**k <= lo`` and ``r_hi**k >= hi``, tight to ``tol``."""
    if lo <= 0:
        raise ArithmeticError("root of a non-positive number")
    if lo == hi:
        exact = _exact_root(lo, k)
        if exact is not None:
            return exact, exact

    def below(target):
        a, b = Fraction(0), max(Fraction(1), target)
        while b - a > tol / 4:
            m = (a + b) / 2
            a, b = (m, b) if m ** k <= target else (a, m)
        return a, b

    return below(lo)[0], below(hi)[1]


def construct_from_moments(m: MomentTable, alpha: AlphaVector, tol=Fraction(1, 10 ** 12)) -> list:
    """One candidate per positive root of ``g``, ascending in ``lambda1/lambda2``."""
    n = m.n
    if n < 2:
        raise ValueError("construction needs n >= 2")
    tol = Fraction(tol)
    g = alpha.polynomial()
    A = Polynomial.from_descending(m.a)
    out = []
    for iv in isolate_positive_roots(g):
        t = tol
        while True:
            r = refine_interval(g, iv, t)
            if r.lo <= 0:
                t /= 16
                continue
            p_lo = r.lo / eval_poly(A, r.hi)
            p_hi = r.hi / eval_poly(A, r.lo)
            c_lo, c_hi = kth_root_enclosure(p_lo, p_hi, n - 1, t)
            l1 = (c_lo * r.lo, c_hi * r.hi)
            l2 = (c_lo, c_hi)
            if l1[1] - l1[0] <= tol and l2[1] - l2[0] <= tol:
                break
            t /= 16
        out.append(SolutionCandidate(sum(l1) / 2, sum(l2) / 2, l1[1] - l1[0], l2[1] - l2[0], r))
    return out


def construct_solutions(k: KernelSpec, tol=Fraction(1, 10 ** 12)) -> list:
    m = compute_moments(k)
    return construct_from_moments(m, assemble_alpha(m), tol)


def solution_residual(k: KernelSpec, lambda1, lambda2, grid_points: int = 1001) -> Fraction:
    """Max over a uniform grid of ``|u(x) - int k(x, y) u(y)**n dy|``, exactly.

    ``u = lambda1*phi1 + lambda2*phi2``; the integral collapses to
    ``phi1(x)*I1 + phi2(x)*I2`` so only two exact integrals are needed.
    """
    if grid_points < 2:
        raise ValueError("need at least two grid points")
    l1, l2 = Fraction(lambda1), Fraction(lambda2)
    u = k.phi1 * l1 + k.phi2 * l2
    un = u ** k.n
    c1 = l1 - pw_integrate01(k.psi1 * un)
    c2 = l2 - pw_integrate01(k.psi2 * un)
    worst = Fraction(0)
    for j in range(grid_points):
        x = Fraction(j, grid_points - 1)
        worst = max(worst, abs(c1 * k.phi1(x) + c2 * k.phi2(x)))
    return worst


def verify_solution(k: KernelSpec, s: SolutionCandidate, grid_points: int = 1001) -> Fraction:
    return solution_residual(k, s.lambda1, s.lambda2, grid_points)


def count_negative_solutions(m: MomentTable):
    """Negative solutions mirror positive ones for odd n and do not exist for even n.

    Returns ``math.inf`` for a linear family.
    """
    if m.n % 2 == 0:
        return 0
    if m.n == 1:
        return math.inf if analyze_n1(m).classification == INFINITE_FAMILY else 0
    return count_positive_solutions(assemble_alpha(m), m.n).m


@dataclass
class AnalysisReport:
    n: int
    mode: str
    classification: str
    moments: MomentTable
    alpha: AlphaVector
    m: Optional[int] = None
    mu: Optional[int] = None
    nu: Optional[int] = None
    sign_list: tuple = ()
    revised_sign_list: tuple = ()
    positive_sign_list: tuple = ()
    positive_revised_sign_list: tuple = ()
    cubic: Optional[CubicInvariants] = None
    cubic_conditions: Optional[dict] = None
    direction: Optional[tuple] = None
    theorem1_determinant: Optional[Fraction] = None
    theorem1_bound: Optional[Fraction] = None
    solutions: list = field(default_factory=list)
    negative_count: object = 0
    certified: bool = True
    possible_counts: tuple = ()
    flags: tuple = ()


def analyze(
    k: KernelSpec,
    mode: str = "exact",
    tol=None,
    solve: bool = False,
    solve_tol=Fraction(1, 10 ** 12),
    grid_points: int = 1001,
    oracle: bool = False,
) -> AnalysisReport:
    """Full pipeline: moments, alpha, classification, optional construction.

    ``mode="numeric"`` integrates the factors as black boxes to ``tol``.
    ``oracle=True`` re-derives the count with Sturm chains and root isolation
    and raises :class:`OracleMismatch` on disagreement; it never alters the
    report.
    """
    if mode == "exact":
        moments = compute_moments(k)
    elif mode == "numeric":
        if tol is None:
            raise ValueError("numeric mode needs a tolerance")
        k.check_positivity()
        moments = numeric_moments(k.phi1, k.phi2, k.psi1, k.psi2, k.n, tol)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    alpha = assemble_alpha(moments)
    n = k.n

    if n == 1:
        lin = analyze_n1(moments)
        report = AnalysisReport(
            n, mode, lin.classification, moments, alpha,
            direction=lin.direction,
            theorem1_determinant=lin.determinant,
            theorem1_bound=None if moments.exact else lin.det_bound,
            certified=lin.certified,
        )
        report.negative_count = math.inf if lin.classification == INFINITE_FAMILY else 0
        return report

    cnt = count_positive_solutions(alpha, n)
    report = AnalysisReport(
        n, mode, FINITE_COUNT, moments, alpha,
        m=cnt.m, mu=cnt.even_path.mu, nu=cnt.even_path.nu,
        sign_list=cnt.even_path.sign_list, revised_sign_list=cnt.even_path.revised,
        positive_sign_list=cnt.direct_path.sign_list,
        positive_revised_sign_list=cnt.direct_path.revised,
        certified=cnt.certified, possible_counts=cnt.possible_counts,
        flags=cnt.direct_path.flags,
    )
    if n == 2:
        cc = classify_cubic(alpha)
        report.cubic, report.cubic_conditions = cc.invariants, cc.conditions
    report.negative_count = 0 if n % 2 == 0 else cnt.m
    if solve:
        cands = construct_from_moments(moments, alpha, solve_tol)
        if len(cands) != cnt.m:
            raise ConsistencyError(f"constructed {len(cands)} solutions, expected {cnt.m}")
        report.solutions = [
            SolutionCandidate(s.lambda1, s.lambda2, s.lambda1_width, s.lambda2_width, s.root,
                              verify_solution(k, s, grid_points))
            for s in cands
        ]
    if oracle:
        run_oracle(alpha, cnt.m)
    return report


def run_oracle(alpha: AlphaVector, m: int):
    g = alpha.polynomial()
    B = cauchy_bound(g)
    by_sturm = sturm_count(g, 0, B)
    by_isolation = len(isolate_positive_roots(g))
    logger.debug("oracle: sturm %d, isolation %d, discrimination %d", by_sturm, by_isolation, m)
    if not by_sturm == by_isolation == m:
        raise OracleMismatch(f"discrimination {m}, Sturm {by_sturm}, isolation {by_isolation}")
