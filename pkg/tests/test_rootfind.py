import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discrimina.discrimination import count_distinct_positive_roots
from discrimina.exactnum import Polynomial, eval_poly, sign, square_free_part
from discrimina.rootfind import (
    Interval,
    bisect_step,
    cauchy_bound,
    isolate_positive_roots,
    isolate_roots,
    refine_interval,
    refine_root,
    sturm_count,
)

CUBIC = Polynomial.from_descending([1, -3, 2, F(-1, 3)])


def alpha_family_n2():
    """alpha_i(eps) for the n=2 max-affine kernel, as polynomials in eps."""
    return [
        Polynomial([1, 3, 40]),
        Polynomial([-3, F(73, 9), F(26, 3)]),
        Polynomial([2, F(-17, 27), F(-68, 9)]),
        Polynomial([F(-1, 3), -1, -2]),
    ]


def delta3_numerator():
    """alpha0**4 * Delta3(eps): the cubic discriminant in eps."""
    a0, a1, a2, a3 = alpha_family_n2()
    return (a2 ** 3 * a0 * -4 + a0 * a1 * a2 * a3 * 18 + a1 * a1 * a2 * a2
            + a1 ** 3 * a3 * -4 + a0 * a0 * a3 * a3 * -27)


class TestCauchy:
    @pytest.mark.parametrize("coeffs,bound", [([-1, 0, 1], 2), ([-1, -1, 1, 1], 2)])
    def test_examples(self, coeffs, bound):
        assert cauchy_bound(Polynomial(coeffs)) == bound

    def test_cubic(self):
        assert cauchy_bound(CUBIC) == 4

    def test_zero(self):
        with pytest.raises(ValueError):
            cauchy_bound(Polynomial())


class TestIsolation:
    def test_no_roots(self):
        assert isolate_positive_roots(Polynomial([1, 0, 1])) == []

    def test_single(self):
        (iv,) = isolate_positive_roots(Polynomial([-1, -1, 1, 1]))
        assert 1 in iv

    def test_cubic_brackets(self):
        ivs = isolate_positive_roots(CUBIC)
        assert len(ivs) == 3
        for iv, (lo, hi) in zip(ivs, [(F(1, 5), F(3, 10)), (F(3, 10), 1), (2, F(5, 2))]):
            r = refine_interval(CUBIC, iv, F(1, 10 ** 6))
            assert lo < r.lo and r.hi < hi
        for a, b in zip(ivs, ivs[1:]):
            assert a.hi <= b.lo

    def test_exact_hit_is_zero_width(self):
        # the first bisection probe, 2, is itself a root
        ivs = isolate_roots(Polynomial([-1, 1]) * Polynomial([-2, 1]), 0, 4)
        assert len(ivs) == 2
        assert ivs[1] == Interval(F(2), F(2))
        assert 1 in ivs[0]

    def test_endpoints_not_roots(self):
        f = Polynomial([-1, 1]) * Polynomial([-2, 1]) * Polynomial([-4, 1])
        for iv in isolate_roots(f, 0, 8):
            if not iv.exact:
                assert eval_poly(f, iv.lo) != 0 and eval_poly(f, iv.hi) != 0

    def test_repeated_root_single_interval(self):
        f = Polynomial([-1, 1]) ** 2 * Polynomial([-2, 1])
        assert len(isolate_positive_roots(f)) == 2


class TestRefine:
    def test_sqrt2(self):
        x = refine_root(Polynomial([-2, 0, 1]), Interval(F(1), F(2)), F(1, 10 ** 6))
        assert abs(float(x) - math.sqrt(2)) <= 1e-6

    def test_exact_root(self):
        x = refine_root(Polynomial([-1, -1, 1, 1]), Interval(F(1, 2), F(3, 2)), F(1, 10 ** 9))
        assert abs(x - 1) <= F(1, 10 ** 9)

    def test_halving(self):
        q = square_free_part(CUBIC)
        iv = Interval(F(2), F(5, 2))
        for _ in range(20):
            nxt = bisect_step(q, iv)
            assert nxt.width == iv.width / 2
            assert sign(eval_poly(q, nxt.lo)) != sign(eval_poly(q, nxt.hi))
            iv = nxt

    def test_rejects_non_bracket(self):
        with pytest.raises(ValueError):
            refine_interval(CUBIC, Interval(F(3), F(4)), F(1, 100))
        with pytest.raises(ValueError):
            refine_interval(CUBIC, Interval(F(2), F(3)), 0)

    def test_threshold_eps(self):
        d3 = delta3_numerator()
        assert sign(eval_poly(d3, 0)) != sign(eval_poly(d3, F(1, 10)))
        (iv,) = isolate_roots(d3, 0, F(1, 10))
        r = refine_root(d3, iv, F(1, 10 ** 4))
        assert abs(float(r) - 0.03143) <= 1e-3


class TestSturm:
    @pytest.mark.parametrize("coeffs,a,b,n", [([-1, 0, 1], -2, 2, 2), ([-1, 0, 1], 0, 2, 1)])
    def test_examples(self, coeffs, a, b, n):
        assert sturm_count(Polynomial(coeffs), a, b) == n

    def test_cubic(self):
        assert sturm_count(CUBIC, 0, 4) == 3

    def test_open_interval(self):
        f = Polynomial([-1, 0, 1])
        assert sturm_count(f, -1, 1) == 0
        assert sturm_count(f, 1, 2) == 0
        assert sturm_count(f, F(1, 2), 1) == 0

    def test_random_corpus_agrees_with_isolation(self):
        rng = random.Random(2024)
        for _ in range(200):
            deg = rng.randint(2, 8)
            c = [rng.randint(-20, 20) for _ in range(deg + 1)]
            c[0] = c[0] or 1
            c[-1] = c[-1] or -1
            f = Polynomial(c)
            B = cauchy_bound(f)
            ivs = isolate_positive_roots(f)
            assert len(ivs) == sturm_count(f, 0, B) == count_distinct_positive_roots(f).count


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=9).filter(lambda c: c[0] != 0 and c[-1] != 0))
def test_isolation_matches_sturm(coeffs):
    f = Polynomial(coeffs)
    B = cauchy_bound(f)
    ivs = isolate_roots(f, -B, B)
    assert len(ivs) == sturm_count(f, -B, B)
    for iv in ivs:
        assert -B <= iv.lo <= iv.hi <= B
