"""Oracle routes: brute-force double quadrature, real-space kernels, and the
special-function closed forms."""
import math
import time

import pytest

from levylab import functionals as F, oracle as O, spectra as sp
from levylab.functionals import EfficiencyQuery as EQ


class TestTimeFrequencyOracle:
    def test_matches_closed_form_interval(self):
        prey = sp.uniform_prey(sp.interval(-1, 1))
        a = F.eval_efficiency(EQ(prey, 0.5, 1.0, normalized=False))
        b = O.time_freq_double_quadrature(prey, 0.5, 1.0)
        assert b == pytest.approx(a, rel=1e-8)

    def test_short_time_value_over_T_tends_to_mass(self):
        prey = sp.uniform_prey(sp.interval(-1, 1))
        T = 1e-8
        assert O.time_freq_double_quadrature(prey, 0.25, T) / T == pytest.approx(
            prey.mass, rel=1e-7)

    def test_s_zero_closed_form(self):
        prey = sp.uniform_prey(sp.interval(-1, 1))
        v = O.time_freq_double_quadrature(prey, 0.0, 2.0)
        assert v == pytest.approx((1 - math.exp(-2.0)) * 0.5, rel=1e-14)


class TestRealspaceOracle:
    def test_matches_fourier_route(self):
        base = sp.interval(-1, 1)
        prey = sp.uniform_prey(base)
        for s in (1.0, 0.5):
            a = F.eval_efficiency(EQ(prey, s, 1.0))
            assert O.realspace_kernel_J(base, s, 1.0) == pytest.approx(a, rel=1e-6)

    def test_short_time_limit(self):
        assert O.realspace_kernel_J(sp.interval(-1, 1), 1.0, 1e-8) == pytest.approx(
            0.5, rel=1e-4)

    def test_only_closed_kernels(self):
        with pytest.raises(ValueError):
            O.realspace_kernel_J(sp.interval(-1, 1), 0.3, 1.0)


class TestFiniteDiff:
    def test_constant_gives_zero(self):
        assert O.finite_diff(lambda s: 4.2, 0.5, 1e-5) == 0.0

    def test_quadratic(self):
        assert O.finite_diff(lambda s: s * s, 0.3, 1e-6) == pytest.approx(0.6, rel=1e-7)


class TestClosedForms:
    def test_g_closed_limit(self):
        assert O.g_closed_form(1e-8) == pytest.approx(2.0, rel=1e-6)

    def test_f_closed_limit(self):
        assert O.f_closed_form(1e-8) == pytest.approx(
            1.0 - O.EULER_GAMMA - math.log(2.0), rel=1e-6)

    def test_gprime_consistency(self):
        s = 0.3
        assert O.g_prime_closed_form(s) == pytest.approx(
            -2.0 * O.g_closed_form(s) * O.f_closed_form(s), rel=1e-14)


class TestComparisonRecord:
    def test_passed_iff_gap_within_tolerance(self):
        good = O.compare("x", 1.0, 1.0 + 1e-10, 1e-9)
        bad = O.compare("x", 1.0, 1.01, 1e-9)
        assert good.passed and good.rel_gap <= good.tolerance
        assert not bad.passed and bad.rel_gap > bad.tolerance


class TestDefaultBattery:
    def test_all_pass_within_time_budget(self):
        t0 = time.time()
        comps = O.default_comparisons()
        elapsed = time.time() - t0
        failed = [c for c in comps if not c.passed]
        assert not failed, [f"{c.name}: gap {c.rel_gap:.2e}" for c in failed]
        # every comparison well under the 10 s per-check budget
        assert elapsed < 10.0 * len(comps)
        assert len(comps) >= 10
