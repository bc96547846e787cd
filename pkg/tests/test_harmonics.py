import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from melsplit import (
    build_polygon,
    build_rhomboid,
    build_rp3bp,
    c_coeffs,
    coefficient_set,
    d_coeffs,
    d_l,
    harmonic_table,
    legendre_cos_coeffs,
)
from melsplit.config import rotate
from melsplit.harmonics import legendre_pair


class TestLegendreCosine:
    def test_order_zero(self):
        assert legendre_cos_coeffs(0).coefficients == {0: 1.0}

    def test_order_two(self):
        assert legendre_cos_coeffs(2).coefficients == {0: 0.25, 2: 0.75}

    def test_order_three_against_fit_oracle(self):
        # brute-force least-squares fit of P_3(cos g) on cos g, cos 3g
        angles = np.linspace(0.1, 3.0, 8)
        target = np.array([legendre_pair(3, math.cos(g))[0] for g in angles])
        basis = np.stack([np.cos(angles), np.cos(3 * angles)], axis=1)
        fit, *_ = np.linalg.lstsq(basis, target, rcond=None)
        assert fit == pytest.approx([3.0 / 8.0, 5.0 / 8.0], abs=1e-12)
        assert legendre_cos_coeffs(3).coefficients == {1: 0.375, 3: 0.625}

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=24), st.floats(min_value=-3.1, max_value=3.1))
    def test_pointwise_identity(self, j, gamma):
        direct = legendre_pair(j, math.cos(gamma))[0]
        series = sum(
            c * math.cos(m * gamma) for m, c in legendre_cos_coeffs(j).coefficients.items()
        )
        assert series == pytest.approx(direct, abs=1e-12)

    def test_pointwise_identity_dense_angles(self):
        for j in range(0, 13):
            coeffs = legendre_cos_coeffs(j).coefficients
            for gamma in np.linspace(0.0, 2 * math.pi, 32, endpoint=False):
                direct = legendre_pair(j, math.cos(gamma))[0]
                series = sum(c * math.cos(m * gamma) for m, c in coeffs.items())
                assert abs(series - direct) <= 1e-12

    def test_all_coefficients_nonnegative_low_orders(self):
        for j in range(0, 13):
            assert all(v >= 0.0 for v in legendre_cos_coeffs(j).coefficients.values())

    def test_parity_structure(self):
        for j in (4, 7, 10):
            assert all(m % 2 == j % 2 for m in legendre_cos_coeffs(j).coefficients)

    def test_order_out_of_range(self):
        with pytest.raises(ValueError):
            legendre_cos_coeffs(65)
        with pytest.raises(ValueError):
            legendre_cos_coeffs(-1)


class TestNamedCoefficients:
    def test_rp3bp_half_c2(self, rp3bp_half):
        c1, c2, c3 = c_coeffs(rp3bp_half)
        assert c2 == pytest.approx(0.75, abs=1e-15)
        assert c3 == pytest.approx(0.0, abs=1e-15)

    def test_rp3bp_d_closed_form(self):
        for mu in (0.1, 0.3, 0.49):
            d1, d2, _, _ = d_coeffs(build_rp3bp(mu))
            assert d1 == pytest.approx(3 * mu * (1 - mu) * (1 - 2 * mu), abs=1e-14)
            assert d2 == pytest.approx(0.0, abs=1e-15)

    def test_equilateral_thirds_d4(self, equilateral_thirds):
        d1, d2, d3, d4 = d_coeffs(equilateral_thirds)
        assert (d1, d2, d3) == pytest.approx((0.0, 0.0, 0.0), abs=1e-14)
        assert d4 == pytest.approx(5.0 / (3.0 * math.sqrt(3.0)), abs=1e-14)

    def test_collinear8_c2(self, collinear8):
        _, c2, c3 = c_coeffs(collinear8)
        assert c2 == pytest.approx(1.76876487, abs=1e-6)
        assert c3 == 0.0

    def test_collinear11_c2(self, collinear11):
        assert c_coeffs(collinear11)[1] == pytest.approx(1.95579995, abs=1e-6)

    def test_rhomboid_c2_closed_form(self):
        from melsplit.config import rhomboid_parameters

        for a, b in ((1.0, 1.0), (1.2, 1.0), (0.8, 1.0)):
            x, y, mu = rhomboid_parameters(a, b)
            _, c2, c3 = c_coeffs(build_rhomboid(a, b))
            assert c2 == pytest.approx(-3 * y * y + 6 * mu * (x * x + y * y), abs=1e-13)
            assert c3 == 0.0
            assert sum(abs(v) for v in d_coeffs(build_rhomboid(a, b))) <= 1e-14

    def test_d_l_reduces_to_d_over_three(self, rp3bp_03):
        d1, d2, _, _ = d_coeffs(rp3bp_03)
        d1l, d2l = d_l(rp3bp_03, 1)
        assert d1l == pytest.approx(d1 / 3.0, abs=1e-15)
        assert d2l == pytest.approx(d2 / 3.0, abs=1e-15)
        assert d1l == pytest.approx(0.084, abs=1e-15)

    def test_d_l_vanishes_for_symmetric_pairs(self, rp3bp_half, equilateral_thirds):
        for l in range(1, 6):
            assert d_l(rp3bp_half, l) == pytest.approx((0.0, 0.0), abs=1e-15)
        for l in range(2, 6):
            assert d_l(equilateral_thirds, l) == pytest.approx((0.0, 0.0), abs=1e-14)

    def test_coefficient_set_wrapper(self, rp3bp_03):
        cs = coefficient_set(rp3bp_03)
        assert cs.c1 >= 0.0
        assert (cs.d1, cs.d2) == d_coeffs(rp3bp_03)[:2]


class TestHarmonicTable:
    def test_normalization_ladder(self):
        for config in (
            build_rp3bp(0.23),
            build_rhomboid(1.1, 1.0),
            rotate(build_rp3bp(0.4), 0.9),
        ):
            c1, c2, c3 = c_coeffs(config)
            t2 = harmonic_table(config, 2)
            assert 4.0 * t2.pair(0)[0] == pytest.approx(c1, abs=1e-12)
            assert 4.0 * t2.pair(2)[0] == pytest.approx(c2, abs=1e-12)
            assert 4.0 * t2.pair(2)[1] == pytest.approx(c3, abs=1e-12)
            d1, d2, d3, d4 = d_coeffs(config)
            t3 = harmonic_table(config, 3)
            assert 8.0 * t3.pair(1)[0] == pytest.approx(d1, abs=1e-12)
            assert 8.0 * t3.pair(1)[1] == pytest.approx(d2, abs=1e-12)
            assert 8.0 * t3.pair(3)[0] == pytest.approx(d3, abs=1e-12)
            assert 8.0 * t3.pair(3)[1] == pytest.approx(d4, abs=1e-12)

    def test_rp3bp_half_j2_entry(self, rp3bp_half):
        assert harmonic_table(rp3bp_half, 2).pair(2)[0] == pytest.approx(3.0 / 16.0, abs=1e-15)

    def test_hexagon_j3_all_zero(self, hexagon):
        for _, a, b in harmonic_table(hexagon, 3).entries:
            assert abs(a) <= 1e-15 and abs(b) <= 1e-15

    def test_polygon_selection_rule(self):
        for n_total in (4, 5, 6, 7):
            c = build_polygon(n_total)
            n = n_total - 1
            for j in range(2, 2 * n_total - 2):
                for m, a, b in harmonic_table(c, j).entries:
                    if 1 <= m < n:
                        assert abs(a) <= 1e-12 and abs(b) <= 1e-12

    def test_collinear_sine_kill(self, collinear8):
        for j in range(2, 9):
            for _, _, b in harmonic_table(collinear8, j).entries:
                assert b == 0.0

    def test_rotational_covariance(self):
        base = build_rp3bp(0.3)
        for phi in (0.35, math.pi / 7):
            rotated = harmonic_table(rotate(base, phi), 3)
            original = harmonic_table(base, 3)
            for m in (1, 3):
                a, b = original.pair(m)
                ar, br = rotated.pair(m)
                assert ar == pytest.approx(
                    a * math.cos(m * phi) + b * math.sin(m * phi), abs=1e-10
                )
                assert br == pytest.approx(
                    b * math.cos(m * phi) - a * math.sin(m * phi), abs=1e-10
                )

    @settings(max_examples=25, deadline=None)
    @given(
        st.floats(min_value=-math.pi, max_value=math.pi),
        st.integers(min_value=1, max_value=4),
    )
    def test_rotational_covariance_property(self, phi, m):
        base = build_rhomboid(1.2, 1.0)
        j = 4 if m % 2 == 0 else 5
        a, b = harmonic_table(base, j).pair(m)
        ar, br = harmonic_table(rotate(base, phi), j).pair(m)
        assert ar == pytest.approx(a * math.cos(m * phi) + b * math.sin(m * phi), abs=1e-10)
        assert br == pytest.approx(b * math.cos(m * phi) - a * math.sin(m * phi), abs=1e-10)

    def test_order_domain(self, rp3bp_03):
        with pytest.raises(ValueError):
            harmonic_table(rp3bp_03, 1)
