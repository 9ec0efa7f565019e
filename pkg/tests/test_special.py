"""Tests for theta, Z and the Euler-Maclaurin oracle.

Reference values marked "30-digit reference" were computed with an
independent arbitrary-precision package and frozen here; everything else
is checked against the package's own independent oracle route.
"""

import cmath
import math

import numpy as np
import pytest

import gramlab as gl
from gramlab import kernels
from gramlab.errors import DomainError

TWO_PI = 2.0 * math.pi

# 30-digit references
THETA_100 = 87.972165231787219625
THETA_2PIE = -0.39147904935389789212
THETA_1E4 = 31861.923830835820873
Z_100 = 2.69269705666446347
Z_1000 = 0.997794637521586614
Z_10000 = -0.341394724231208559
Z_250_5 = -1.17586251692256182
ZETA_HALF_50 = complex(-0.081712108320979975, 0.330792194038661296)
ZETA_2_10 = complex(1.19798250067418461, -0.0791704917205257473)
ZETA_HALF_1000 = complex(0.356334367194396055, 0.931997831232993665)
GAMMA_1 = 14.13472514173469379


class TestTheta:
    def test_frozen_values(self):
        tv = gl.theta(100.0)
        assert tv.value == pytest.approx(THETA_100, abs=1e-9)
        assert abs(tv.value - THETA_100) <= tv.truncation_bound

        tv = gl.theta(TWO_PI * math.e)
        assert tv.value == pytest.approx(THETA_2PIE, abs=2e-9)
        assert abs(tv.value - THETA_2PIE) <= tv.truncation_bound
        assert tv.truncation_bound < 1e-4

    def test_leading_term_cancellation_at_2pi_e(self):
        # t/2 log(t/2pi) equals pi*e there, so the value is -pi/8 + tail
        tv = gl.theta(TWO_PI * math.e)
        tail = tv.value + math.pi / 8.0
        assert 0 < tail < 2e-3

    def test_truncation_bound_decreases(self):
        bounds = [gl.theta(t).truncation_bound for t in (10.0, 100.0, 1e4)]
        assert bounds[0] > bounds[1] > bounds[2] > 0

    def test_monotone_increasing(self):
        t = np.linspace(7.0, 1e4, 20000)
        th = gl.theta_many(t)
        assert np.all(np.diff(th) > 0)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            gl.theta(TWO_PI)
        with pytest.raises(DomainError):
            gl.theta(3.0)
        with pytest.raises(ValueError):
            gl.theta(float("nan"))
        with pytest.raises(ValueError):
            gl.theta(float("inf"))


class TestThetaDeriv:
    def test_half_log_at_2pi_e(self):
        d = gl.theta_deriv(TWO_PI * math.e)
        assert d == pytest.approx(0.5, abs=1e-3)

    def test_positive(self):
        for t in (10.0, 100.0, 1e6):
            assert gl.theta_deriv(t) > 0

    def test_finite_difference(self):
        t, eps = 1e4, 1e-3
        fd = (gl.theta(t + eps).value - gl.theta(t - eps).value) / (2 * eps)
        d = gl.theta_deriv(t)
        assert d == pytest.approx(fd, rel=1e-6)

    def test_matches_reference_derivative(self):
        # 30-digit reference: 3.68623165257508529 at t = 1e4
        assert gl.theta_deriv(1e4) == pytest.approx(3.68623165257509, abs=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            gl.theta_deriv(6.0)


class TestZ:
    def test_frozen_values(self):
        assert gl.z(100.0).value == pytest.approx(Z_100, abs=1e-7)
        assert gl.z(250.5).value == pytest.approx(Z_250_5, abs=1e-7)
        assert gl.z(1000.0).value == pytest.approx(Z_1000, abs=1e-8)
        assert gl.z(10000.0).value == pytest.approx(Z_10000, abs=1e-8)

    def test_remainder_covers_frozen_error(self):
        for t, ref in [(100.0, Z_100), (1000.0, Z_1000), (10000.0, Z_10000)]:
            zv = gl.z(t)
            assert abs(zv.value - ref) <= max(zv.remainder_estimate, 1e-9)

    def test_vanishes_at_first_zero(self):
        assert abs(gl.z(14.134725).value) < 1e-6

    def test_term_count(self):
        for t in (10.0, 100.0, 12345.6, 1e6):
            assert gl.z(t).term_count == int(math.sqrt(t / TWO_PI))

    def test_term_count_jumps_at_square_boundaries(self):
        for k in (5, 12):
            boundary = TWO_PI * k * k
            assert gl.z(boundary - 1e-6).term_count == k - 1
            assert gl.z(boundary + 1e-6).term_count == k

    def test_positive_at_first_gram_point(self):
        g0 = gl.gram_point(0)
        assert gl.z(g0.t).value > 0

    def test_remainder_estimate_properties(self):
        ests = [gl.z(t).remainder_estimate for t in (150.0, 1500.0, 15000.0)]
        assert all(e >= 0 for e in ests)
        assert ests[0] > ests[1] > ests[2]
        # decays at least as fast as (t/2pi)^(-3/4)
        for t in (200.0, 2000.0, 2e4):
            assert gl.z(t).remainder_estimate <= 2e-4 * (t / TWO_PI) ** -0.75

    def test_domain(self):
        with pytest.raises(DomainError):
            gl.z(9.5)
        with pytest.raises(ValueError):
            gl.z(float("nan"))


class TestOracle:
    def test_zeta_2(self):
        v = gl.zeta_euler_maclaurin(2.0, 0.0, 50)
        assert v.real == pytest.approx(math.pi**2 / 6.0, abs=1e-6)
        assert abs(v.imag) < 1e-12

    def test_zeta_0(self):
        v = gl.zeta_euler_maclaurin(0.0, 0.0, 50)
        assert v.real == pytest.approx(-0.5, abs=1e-9)

    def test_zeta_3(self):
        # Apery's constant, 30-digit reference
        v = gl.zeta_euler_maclaurin(3.0, 0.0, 40)
        assert v.real == pytest.approx(1.20205690315959429, abs=1e-12)

    def test_frozen_complex_values(self):
        from gramlab.special import em_term_count

        for (sigma, t), ref in [
            ((0.5, 50.0), ZETA_HALF_50),
            ((2.0, 10.0), ZETA_2_10),
            ((0.5, 1000.0), ZETA_HALF_1000),
        ]:
            v = gl.zeta_euler_maclaurin(sigma, t, em_term_count(t))
            assert abs(v - ref) < 1e-8

    def test_small_at_first_zero(self):
        v = gl.zeta_euler_maclaurin(0.5, 14.134725, 60)
        assert abs(v) < 1e-5

    def test_errors(self):
        with pytest.raises(ValueError):
            gl.zeta_euler_maclaurin(0.5, 10.0, 5)
        with pytest.raises(DomainError):
            gl.zeta_euler_maclaurin(1.0, 0.0, 50)
        with pytest.raises(DomainError):
            gl.zeta_euler_maclaurin(0.5, 2e6, 50)


class TestTwoRouteConsistency:
    def test_z_matches_oracle_on_random_band(self):
        from gramlab.special import em_term_count

        rng = np.random.default_rng(421)
        ts = rng.uniform(50.0, 500.0, size=100)
        for t in ts:
            w = cmath.exp(1j * gl.theta(t).value) * gl.zeta_euler_maclaurin(
                0.5, t, em_term_count(t)
            )
            assert abs(gl.z(t).value - w.real) < 1e-6

    def test_reflection_identity_wide(self):
        from gramlab.special import em_term_count

        rng = np.random.default_rng(7)
        ts = rng.uniform(20.0, 1e4, size=200)
        for t in ts:
            zv = gl.z(t)
            w = cmath.exp(1j * gl.theta(t).value) * gl.zeta_euler_maclaurin(
                0.5, t, em_term_count(t)
            )
            assert abs(w - zv.value) < max(1e-6, zv.remainder_estimate)

    def test_hybrid_routes_agree_at_switch(self):
        from gramlab import _em

        t = np.array([kernels.RS_MIN_T + 0.001])
        direct = kernels.z_rs_block(t)[0]
        via_em = (np.exp(1j * kernels.theta_block(t)) * _em.zeta_half_line(t))[0].real
        assert abs(direct - via_em) < 2e-7
