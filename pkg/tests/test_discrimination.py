import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discrimina.discrimination import (
    count_changes,
    count_distinct_positive_roots,
    count_distinct_real_roots,
    cubic_invariants,
    discriminant_sequence,
    discrimination_matrix,
    report_from_signs,
    revise_sign_list,
)
from discrimina.exactnum import Polynomial, sign

# alpha for the n=3 max-affine kernel at eps=2: reference value, then exact integration
ALPHA_EPS2_REFERENCE = [F(1379, 4), F(2549, 12), F(-170, 9), F(-21833, 540), F(-97, 12)]
ALPHA_EPS2_EXACT = [F(1379, 4), F(2549, 12), F(-170, 9), F(-22073, 540), F(-97, 12)]


def even_poly(alpha):
    return Polynomial.from_descending(alpha).in_square()


class TestMatrix:
    def test_x2_minus_1_layout(self):
        M = discrimination_matrix(Polynomial([-1, 0, 1]))
        assert M.tolist() == [
            [1, 0, -1, 0, 0],
            [0, 2, 0, 0, 0],
            [0, 1, 0, -1, 0],
            [0, 0, 2, 0, 0],
            [0, 0, 1, 0, -1],
        ]

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            discrimination_matrix(Polynomial([3]))


class TestSequence:
    @pytest.mark.parametrize("coeffs,signs", [([1, 0, 1], (1, -1)), ([-1, 0, 1], (1, 1))])
    def test_quadratics(self, coeffs, signs):
        seq = discriminant_sequence(Polynomial(coeffs))
        assert seq.signs == signs
        assert len(seq.values) == 2

    @pytest.mark.parametrize("alpha", [ALPHA_EPS2_REFERENCE, ALPHA_EPS2_EXACT])
    def test_example3_eps2(self, alpha):
        rep = count_distinct_real_roots(even_poly(alpha))
        assert rep.revised == (1, -1, -1, -1, 1, 1, 1, -1)
        assert (rep.mu, rep.nu, rep.count) == (8, 3, 2)


class TestRevision:
    @pytest.mark.parametrize(
        "raw,revised",
        [
            ([1, 0, 0, -1], (1, -1, -1, -1)),
            ([1, 1, 0, 0], (1, 1, 0, 0)),
            ([1, 0, 0, 0, 1], (1, -1, -1, 1, 1)),
            ([1, 0, 1], (1, -1, 1)),
            ([0, 0, 1], (0, 0, 1)),
        ],
    )
    def test_examples(self, raw, revised):
        assert revise_sign_list(raw) == revised

    @given(st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=12))
    def test_revision_shape(self, signs):
        revised = revise_sign_list(signs)
        assert len(revised) == len(signs) and set(revised) <= {-1, 0, 1}
        # nonzero entries are never altered by revision
        assert all(r == s for r, s in zip(revised, signs) if s)
        # zeros survive only before the first or after the last nonzero entry
        nz = [i for i, s in enumerate(signs) if s]
        if nz:
            assert all(revised[i] != 0 for i in range(nz[0], nz[-1] + 1))

    def test_report_from_realizable_list(self):
        rep = report_from_signs([1, 0, 0, -1])
        assert (rep.mu, rep.nu, rep.count) == (4, 1, 2)
        assert rep.nu == count_changes(rep.revised)


class TestCounts:
    @pytest.mark.parametrize("coeffs,n", [([-1, 0, 1], 2), ([1, 0, 1], 0), ([-1, -1, 1, 1], 2), ([-6, 11, -6, 1], 3)])
    def test_real(self, coeffs, n):
        assert count_distinct_real_roots(Polynomial(coeffs)).count == n

    @pytest.mark.parametrize(
        "coeffs,n",
        [([-2, 1, 1], 1), ([-1, -1, 1, 1], 1), ([1, 0, 1], 0), ([-6, 11, -6, 1], 3), ([6, 11, 6, 1], 0)],
    )
    def test_positive(self, coeffs, n):
        assert count_distinct_positive_roots(Polynomial(coeffs)).count == n

    @pytest.mark.parametrize("alpha", [ALPHA_EPS2_REFERENCE, ALPHA_EPS2_EXACT])
    def test_positive_example3(self, alpha):
        assert count_distinct_positive_roots(Polynomial.from_descending(alpha)).count == 1

    def test_zero_constant_term_rejected(self):
        with pytest.raises(ValueError):
            count_distinct_positive_roots(Polynomial([0, -1, 1]))

    def test_positive_scaling(self):
        rng = random.Random(7)
        for _ in range(100):
            f = Polynomial([rng.randint(-9, 9) for _ in range(rng.randint(3, 7))] + [rng.randint(1, 9)])
            if f[0] == 0:
                continue
            c = F(rng.randint(1, 50), rng.randint(1, 50))
            assert count_distinct_real_roots(f.scale(c)).revised == count_distinct_real_roots(f).revised
            assert count_distinct_positive_roots(f.scale(c)).revised == count_distinct_positive_roots(f).revised

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(-20, 20), min_size=3, max_size=6).filter(lambda c: c[0] != 0 and c[-1] != 0))
    def test_even_composition(self, coeffs):
        g = Polynomial(coeffs)
        assert count_distinct_real_roots(g.in_square()).count == 2 * count_distinct_positive_roots(g).count

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(-20, 20), min_size=3, max_size=9).filter(lambda c: c[-1] != 0))
    def test_count_within_degree(self, coeffs):
        f = Polynomial(coeffs)
        rep = count_distinct_real_roots(f)
        assert 0 <= rep.count <= f.degree
        assert rep.count == rep.mu - 2 * rep.nu


class TestCubic:
    def test_eps0_invariants(self):
        inv = cubic_invariants([1, -3, 2, F(-1, 3)])
        assert (inv.p, inv.r, inv.t) == (-3, 2, F(-1, 3))
        assert (inv.delta1, inv.delta2, inv.delta3) == (3, 5, 1)

    def test_constant_kernel(self):
        assert cubic_invariants([1, 1, -1, -1]).p == 1

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 9), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, -1), st.integers(1, 6))
    def test_d_list_matches_sequence(self, a0, a1, a2, a3, den):
        alpha = [F(a0, den), F(a1, den), F(a2, den), F(a3, den)]
        inv = cubic_invariants(alpha)
        signs = discriminant_sequence(even_poly(alpha)).signs
        assert tuple(signs) == inv.d_signs
        assert all(sign(v) == s for v, s in zip(inv.d_list, inv.d_signs))
