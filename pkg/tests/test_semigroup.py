"""Semigroup scalar functions: examples, stability, and range properties."""
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levylab import kernels, semigroup as sg

mp.mp.dps = 40


class TestSigma:
    def test_at_zero(self):
        assert sg.sigma(0.0) == 1.0

    def test_at_one(self):
        assert sg.sigma(1.0) == pytest.approx(1.0 - math.exp(-1.0), rel=1e-15)

    def test_asymptotic(self):
        assert sg.sigma(1e9) == pytest.approx(1e-9, rel=1e-9)

    def test_strictly_decreasing_log_grid(self):
        u = np.geomspace(1e-8, 1e8, 400)
        v = sg.sigma(u)
        assert np.all(np.diff(v) < 0)

    def test_range(self):
        u = np.geomspace(1e-12, 1e12, 200)
        v = sg.sigma(u)
        assert np.all(v > 0) and np.all(v <= 1.0)

    def test_branch_agreement_at_switch(self):
        u = kernels.SIGMA_SWITCH
        a, b = kernels.sigma_series(u), kernels.sigma_direct(u)
        assert abs(a - b) / abs(b) < 1e-13

    def test_against_mpmath(self):
        for u in np.geomspace(1e-8, 1e4, 60):
            exact = float((1 - mp.e ** (-mp.mpf(u))) / mp.mpf(u))
            assert sg.sigma(float(u)) == pytest.approx(exact, rel=2e-15)


class TestSigmaPrime:
    def test_limit_at_zero(self):
        assert sg.sigma_prime(0.0) == -0.5

    def test_large_u_asymptote(self):
        # -1/u^2 up to exponentially small corrections
        assert sg.sigma_prime(50.0) == pytest.approx(-1.0 / 2500.0, rel=1e-10)

    def test_nonpositive_everywhere(self):
        u = np.geomspace(1e-10, 1e10, 300)
        assert np.all(sg.sigma_prime(u) <= 0)

    def test_against_mpmath_derivative(self):
        f = lambda x: (1 - mp.e**-x) / x
        for u in np.geomspace(1e-6, 1e4, 40):
            exact = float(mp.diff(f, mp.mpf(float(u))))
            assert sg.sigma_prime(float(u)) == pytest.approx(exact, rel=1e-12)


class TestTheta:
    def test_at_zero(self):
        assert sg.theta(0.0) == 0.0

    def test_at_one(self):
        assert sg.theta(1.0) == pytest.approx(1.0 - 2.0 / math.e, rel=1e-14)

    def test_at_hundred_bracket(self):
        # true value is 1/100 - O(e^-100); the upper edge rounds to 1/100
        v = sg.theta(100.0)
        assert 1.0 / 200.0 < v <= 1.0 / 100.0

    def test_identity_theta_eq_minus_u_sigma_prime(self):
        # independent route: high-precision mpmath derivative of sigma
        f = lambda x: (1 - mp.e**-x) / x
        for u in np.geomspace(1e-6, 1e4, 50):
            exact = float(-mp.mpf(float(u)) * mp.diff(f, mp.mpf(float(u))))
            assert sg.theta(float(u)) == pytest.approx(exact, rel=1e-12)

    def test_envelopes(self):
        u = np.geomspace(1e-8, 1e8, 400)
        v = sg.theta(u)
        assert np.all(v >= 0)
        assert np.all(v <= np.minimum(u / 2.0 * (1 + 1e-12), 1.0 / u))

    def test_lower_bound_for_large_u(self):
        u = np.geomspace(10.0, 1e8, 100)
        assert np.all(sg.theta(u) > 1.0 / (2.0 * u))

    def test_branch_agreement_at_switch(self):
        u = kernels.THETA_SWITCH
        a, b = kernels.theta_series(u), kernels.theta_direct(u)
        assert abs(a - b) / abs(b) < 1e-13


class TestMultiplier:
    def test_s_zero_uniform_decay(self):
        assert sg.multiplier(0.0, 1.0, 7.3) == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_unit_symbol_half(self):
        xi = 1.0 / (2.0 * math.pi)
        assert sg.multiplier(0.5, 1.0, xi) == pytest.approx(math.exp(-1.0), rel=1e-14)

    def test_gaussian_case(self):
        xi = 1.0 / (2.0 * math.pi)
        assert sg.multiplier(1.0, 2.0, xi) == pytest.approx(math.exp(-2.0), rel=1e-14)

    @given(st.floats(0.01, 1.0), st.floats(0.01, 100.0), st.floats(1e-6, 1e3))
    @settings(max_examples=80, deadline=None)
    def test_range_and_monotonicity(self, s, t, xi):
        m = sg.multiplier(s, t, xi)
        assert 0.0 <= m <= 1.0
        if sg.multiplier_arg(s, t, xi) < 700.0:
            assert m > 0.0  # underflows to 0 only past the double range
        assert sg.multiplier(s, 2.0 * t, xi) <= m
        assert sg.multiplier(s, t, 2.0 * xi) <= m

    def test_arg_saturation(self):
        assert sg.multiplier_arg(1.0, 1e300, 1e300) == math.inf
        assert sg.multiplier(1.0, 1e300, 1e300) == 0.0

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            sg.multiplier(1.2, 1.0, 1.0)
        with pytest.raises(ValueError):
            sg.multiplier(0.5, -1.0, 1.0)


class TestKFactor:
    def test_zero_at_critical_radius(self):
        assert sg.k_factor(0.3, 1.0 / (2.0 * math.pi)) == 0.0

    def test_plugin_value(self):
        assert sg.k_factor(0.5, math.e / (2.0 * math.pi)) == pytest.approx(
            2.0 * math.e, rel=1e-14)

    def test_sign_law(self):
        crit = 1.0 / (2.0 * math.pi)
        xi = np.array([crit / 4, crit / 2, crit * 2, crit * 4])
        signs = np.sign(sg.k_factor(0.7, xi))
        assert list(signs) == [-1, -1, 1, 1]

    def test_requires_positive_frequency(self):
        with pytest.raises(ValueError):
            sg.k_factor(0.5, 0.0)
