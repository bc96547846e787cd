import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from melsplit import (
    CubicPhaseIntegrand,
    QuadratureBudgetError,
    eval_F4,
    eval_F61,
    eval_F62,
    eval_Fpoly,
    eval_Ik,
    eval_Jk,
    eval_oscillatory,
    eval_via_ikjk,
    find_zeros,
    polygon_numerators,
    polygon_prefactor,
)
from melsplit.quadrature import (
    adaptive_quadrature,
    f4_integrand,
    f61_integrand,
    f62_integrand,
    ik_zero,
    ikjk_decomposition,
    polygon_integrand,
)

# frozen dual-backend value, cross-checked against the I/J pipeline
F4_AT_2 = 0.8682561381880027

P1_COEFFS = (6, 0, -480, 0, 4510, 0, -11088, 0, 8514, 0, -1936, 0, 90)
P2_COEFFS = (0, 79, 0, -1782, 0, 8217, 0, -11220, 0, 4785, 0, -534, 0, 7)
P3_COEFFS = (-7, 0, 749, 0, -9919, 0, 37037, 0, -48477, 0, 23023, 0, -3549, 0, 119)
P4_COEFFS = (0, -106, 0, 3276, 0, -22022, 0, 48048, 0, -38038, 0, 10556, 0, -826, 0, 8)


class TestBasicContracts:
    def test_arctangent_integral(self):
        res = eval_oscillatory(CubicPhaseIntegrand((1.0,), (), 1, 0.0), 1e-10)
        assert res.value == pytest.approx(math.pi, abs=1e-12)

    def test_ik_zero_values(self):
        assert ik_zero(1) == pytest.approx(math.pi / 2)
        assert ik_zero(2) == pytest.approx(math.pi / 4)
        assert eval_Ik(1, 0.0) == pytest.approx(math.pi / 2, abs=1e-13)

    def test_jk_zero_is_zero(self):
        assert eval_Jk(2, 0.0) == 0.0

    def test_degree_limit_enforced(self):
        with pytest.raises(ValueError):
            CubicPhaseIntegrand((0.0, 0.0, 1.0), (), 1, 1.0)  # z^2/(1+z^2) diverges

    def test_tolerance_domain(self):
        with pytest.raises(ValueError):
            eval_oscillatory(f4_integrand(1.0), 1e-2)

    def test_phase_scale_refusal(self):
        with pytest.raises(QuadratureBudgetError):
            eval_oscillatory(f4_integrand(12.0), 1e-10)  # phase scale 1728 > 1.5e3

    def test_error_estimate_honest(self):
        for tt in (0.4, 1.1, 1.9):
            res = eval_oscillatory(f61_integrand(tt), 1e-11)
            via = eval_via_ikjk(f61_integrand(tt), 1e-11)
            assert abs(res.value - via.value) <= 10 * (
                res.error_estimate + via.error_estimate
            )

    def test_budget_error_reported(self):
        with pytest.raises(QuadratureBudgetError):
            eval_oscillatory(f4_integrand(9.0), 1e-13, budget=500)

    def test_truncation_honesty(self):
        # moving the tail cutoff changes the value by less than the estimate
        from melsplit.quadrature import eval_oscillatory as ev

        a = ev(f61_integrand(1.3), 1e-11)
        b = ev(f61_integrand(1.3), 1e-9)
        assert abs(a.value - b.value) <= max(a.error_estimate, b.error_estimate)


class TestSymmetries:
    @pytest.mark.parametrize("k", [1, 2, 4, 6])
    @pytest.mark.parametrize("delta", [0.7, 3.0, 12.0])
    def test_ik_even(self, k, delta):
        assert eval_Ik(k, delta, 1e-11) == pytest.approx(
            eval_Ik(k, -delta, 1e-11), abs=1e-10
        )

    @pytest.mark.parametrize("k", [2, 3, 5, 8])
    @pytest.mark.parametrize("delta", [0.7, 3.0, 12.0])
    def test_jk_odd(self, k, delta):
        assert eval_Jk(k, delta, 1e-11) == pytest.approx(
            -eval_Jk(k, -delta, 1e-11), abs=1e-10
        )

    def test_j1_rejected(self):
        with pytest.raises(ValueError):
            eval_Jk(1, 1.0)


class TestRecurrence:
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    @pytest.mark.parametrize("delta", [0.5, 2.0, 10.0])
    def test_identity_published_grid(self, k, delta):
        j = eval_Jk(k + 2, delta, 1e-12)
        rec = delta / (2.0 * (k + 1)) * eval_Ik(k, delta, 1e-12)
        assert j == pytest.approx(rec, rel=1e-8)


class TestNamedFunctions:
    def test_f4_zero_at_origin(self):
        assert abs(eval_F4(0.0)) <= 1e-10

    def test_f4_root(self):
        assert abs(eval_F4(0.61078210, 1e-11)) <= 2e-7

    def test_f4_signs(self):
        for tt in (-1.5, -0.5, 0.3, 0.55):
            assert eval_F4(tt, 1e-11) < 0.0
        for tt in (0.7, 1.0, 2.0):
            assert eval_F4(tt, 1e-11) > 0.0

    def test_f4_frozen_value(self):
        assert eval_F4(2.0, 1e-12) == pytest.approx(F4_AT_2, abs=1e-9)

    def test_f61_unique_root_at_origin(self):
        assert abs(eval_F61(0.0)) <= 1e-10
        for tt in (-2.0, -1.0, -0.3):
            assert eval_F61(tt, 1e-11) > 0.0
        for tt in (0.3, 1.0, 2.0):
            assert eval_F61(tt, 1e-11) < 0.0

    def test_f62_roots(self):
        assert abs(eval_F62(0.0)) <= 1e-10
        assert abs(eval_F62(0.15745028, 1e-11)) <= 2e-7
        assert abs(eval_F62(0.87685728, 1e-11)) <= 2e-7

    def test_f62_sign_pattern(self):
        for tt in (-1.5, -0.5, 0.5, 0.7):
            assert eval_F62(tt, 1e-11) > 0.0
        for tt in (0.08, 0.12, 1.0, 1.5):
            assert eval_F62(tt, 1e-11) < 0.0

    def test_decay_at_large_argument(self):
        for f in (eval_F4, eval_F61, eval_F62):
            assert abs(f(10.0, 1e-6)) <= 1e-4
            assert abs(f(-10.0, 1e-6)) <= 1e-4


class TestFindZeros:
    def test_f4_root_location(self):
        roots = find_zeros(lambda t: eval_F4(t, 1e-11), 0.1, 1.5, grid=64)
        assert len(roots) == 1
        assert roots[0] == pytest.approx(0.61078210, abs=1e-6)

    def test_f62_root_locations(self):
        roots = find_zeros(lambda t: eval_F62(t, 1e-11), 0.05, 1.2, grid=128)
        assert len(roots) == 2
        assert roots[0] == pytest.approx(0.15745028, abs=1e-6)
        assert roots[1] == pytest.approx(0.87685728, abs=1e-6)

    def test_constant_sign_function(self):
        assert find_zeros(lambda t: 1.0 + t * t, -1.0, 1.0, grid=16) == []

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            find_zeros(lambda t: t, 1.0, 0.0)
        with pytest.raises(ValueError):
            find_zeros(lambda t: t, 0.0, 1.0, grid=4)


class TestDualBackend:
    @pytest.mark.parametrize(
        "builder", [f4_integrand, f61_integrand, f62_integrand], ids=["F4", "F61", "F62"]
    )
    def test_backends_agree_on_grid(self, builder):
        for tt in np.linspace(-2.0, 2.0, 32):
            direct = eval_oscillatory(builder(float(tt)), 1e-11)
            via = eval_via_ikjk(builder(float(tt)), 1e-11)
            if abs(direct.value) > 1e-2:
                assert via.value == pytest.approx(direct.value, rel=1e-8)
            else:
                assert via.value == pytest.approx(direct.value, abs=1e-10)

    def test_decomposition_is_exact_partial_fractions(self):
        i_terms, j_terms = ikjk_decomposition(f4_integrand(1.0))
        assert {k: float(v) for k, v in i_terms.items()} == {4: 14.0, 5: -52.0, 6: 40.0}
        assert {k: float(v) for k, v in j_terms.items()} == {4: 3.0, 5: -32.0, 6: 40.0}

    @settings(max_examples=20, deadline=None)
    @given(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5),
        st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=5),
        st.integers(min_value=4, max_value=8),
        st.floats(min_value=-2.5, max_value=2.5),
    )
    def test_backends_agree_on_random_integrands(self, cos_c, sin_c, k, delta):
        integrand = CubicPhaseIntegrand(tuple(map(float, cos_c)), tuple(map(float, sin_c)), k, delta)
        direct = eval_oscillatory(integrand, 1e-11)
        via = eval_via_ikjk(integrand, 1e-11)
        assert via.value == pytest.approx(
            direct.value, rel=1e-8, abs=10 * (direct.error_estimate + via.error_estimate) + 1e-12
        )


class TestPolygonGeneration:
    def test_numerators_seven(self):
        p, q = polygon_numerators(7)
        assert p == P1_COEFFS
        assert q == P2_COEFFS

    def test_numerators_eight(self):
        p, q = polygon_numerators(8)
        assert p == tuple(-c for c in P3_COEFFS)
        assert q == tuple(-c for c in P4_COEFFS)

    def test_prefactors(self):
        from fractions import Fraction

        assert polygon_prefactor(7) == Fraction(231, 4)
        assert polygon_prefactor(8) == Fraction(429, 4)
        assert polygon_prefactor(4) == Fraction(10)

    def test_four_body_case_matches_third_harmonic_channel(self):
        for tt in (0.5, 1.0, 1.7, -1.3):
            ratio = eval_Fpoly(4, tt, 1e-11) / eval_F62(tt, 1e-11)
            assert ratio == pytest.approx(-1.0, rel=1e-8)

    def test_phase_scale(self):
        integrand = polygon_integrand(7, 1.0)
        assert integrand.phase_scale == pytest.approx(3.0)
        assert integrand.denominator_power == 14

    def test_decay(self):
        assert abs(eval_Fpoly(5, 6.0, 1e-6)) <= 1e-3


class TestAdaptiveQuadrature:
    def test_polynomial_exact(self):
        val, err, _ = adaptive_quadrature(lambda x: x**3 - 2 * x + 1.0, [0.0, 0.5, 2.0], 1e-12)
        assert val == pytest.approx(2.0, abs=1e-12)

    def test_oscillatory_scalar(self):
        val, err, _ = adaptive_quadrature(
            lambda x: np.sin(40.0 * x), [0.0, 1.0], 1e-12
        )
        assert val == pytest.approx((1 - math.cos(40.0)) / 40.0, abs=1e-11)

    def test_budget(self):
        with pytest.raises(QuadratureBudgetError):
            adaptive_quadrature(lambda x: np.sin(5e4 * x) / (1e-4 + x * x), [0.0, 1.0], 1e-13, budget=2000)
