import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tern.core import UsageError
from tern.data import GravityData, TwoSampleData
from tern.estimators import (
    EstimationError,
    NormalPosteriorCredible,
    NormalPosteriorHPD,
    RegressionCoefficientInterval,
    TInterval,
    TwoSampleTInterval,
    ZInterval,
    g_interval_from_slope,
    gravity_design,
    normal_posterior_credible,
    ols,
    regression_coef_interval,
    t_interval,
    two_sample_diff_interval,
    z_interval,
)
from tern.regions import Interval
from tern.rng import substream

finite = st.floats(-1e3, 1e3)


class TestZInterval:
    # frozen from scipy.stats.norm.interval
    @pytest.mark.parametrize("x_bar, n, sigma, lo, hi", [
        (0.0, 1, 1.0, -1.959963984540054, 1.959963984540054),
        (3.0, 4, 2.0, 1.040036015459946, 4.959963984540054),
    ])
    def test_examples(self, x_bar, n, sigma, lo, hi):
        iv = z_interval(x_bar, n, sigma, 0.95)
        assert (iv.lo, iv.hi) == (pytest.approx(lo, abs=5e-4), pytest.approx(hi, abs=5e-4))

    @given(finite, st.integers(1, 10_000), st.floats(0.01, 100), st.floats(0.01, 0.999))
    def test_against_scipy(self, x, n, sigma, level):
        lo, hi = oracles.z_interval(x, n, sigma, level)
        iv = z_interval(x, n, sigma, level)
        assert iv.lo == pytest.approx(lo, abs=1e-9) and iv.hi == pytest.approx(hi, abs=1e-9)

    def test_width_shrinks(self):
        widths = [z_interval(0, n, 1, 0.95).width for n in (1, 100, 10**6, 10**12)]
        assert widths == sorted(widths, reverse=True) and widths[-1] < 1e-5

    @pytest.mark.parametrize("kwargs", [dict(n=0), dict(sigma=0.0), dict(level=1.0), dict(level=0.0)])
    def test_invalid(self, kwargs):
        args = dict(x_bar=0.0, n=1, sigma=1.0, level=0.95) | kwargs
        with pytest.raises(UsageError):
            z_interval(**args)


class TestCredible:
    @pytest.mark.parametrize("x, lo, hi", [
        (0.0, -1.385903824349678, 1.385903824349678),
        (2.0, -0.38590382434967796, 2.385903824349678),
    ])
    def test_examples(self, x, lo, hi):
        iv = normal_posterior_credible(x, 0.0, 1.0, 1.0, 0.95)
        assert iv.lo == pytest.approx(lo, abs=5e-4) and iv.hi == pytest.approx(hi, abs=5e-4)

    @given(finite, finite, st.floats(0.1, 10), st.floats(0.1, 10), st.integers(1, 50))
    def test_against_scipy(self, x, m, s0, s, n):
        lo, hi = oracles.credible_interval(x, m, s0, s, 0.9, n)
        iv = NormalPosteriorCredible(m, s0, s, 0.9)(np.full(n, x))
        assert iv.lo == pytest.approx(lo, abs=1e-8) and iv.hi == pytest.approx(hi, abs=1e-8)

    def test_flat_prior_limit(self):
        iv = normal_posterior_credible(1.3, 0.0, 1e8, 1.0, 0.95)
        z = z_interval(1.3, 1, 1.0, 0.95)
        assert iv.lo == pytest.approx(z.lo, abs=1e-9) and iv.hi == pytest.approx(z.hi, abs=1e-9)

    def test_hpd_equals_central(self):
        for x in (-3.0, 0.0, 2.5):
            assert NormalPosteriorHPD()([x]) == NormalPosteriorCredible()([x])

    def test_ordered_endpoints(self):
        iv = normal_posterior_credible(-50.0)
        assert iv.lo < iv.hi


class TestT:
    def test_two_points(self):
        iv = t_interval([-1.0, 1.0], 0.95)
        assert iv.lo == pytest.approx(-12.706204736432095, abs=0.01)
        assert iv.hi == pytest.approx(12.706204736432095, abs=0.01)

    def test_against_scipy(self):
        lo, hi = 1.492556680937677, 4.507443319062323  # scipy.stats.t.interval, frozen
        iv = TInterval(0.9)([1, 2, 3, 4, 5])
        assert iv.lo == pytest.approx(lo, abs=1e-9) and iv.hi == pytest.approx(hi, abs=1e-9)

    @pytest.mark.parametrize("data", [[1.0], [2.0, 2.0, 2.0]])
    def test_degenerate(self, data):
        with pytest.raises((UsageError, EstimationError)):
            t_interval(data)

    def test_coverage(self):
        rng = substream(11, "t-coverage")
        x = rng.standard_normal((10_000, 10))
        hits = sum(t_interval(row, 0.95).contains_value(0.0) for row in x)
        assert abs(hits / 10_000 - 0.95) < 0.01

    @given(st.lists(finite, min_size=3, max_size=20, unique=True), st.randoms())
    def test_permutation_invariant(self, data, rnd):
        shuffled = list(data)
        rnd.shuffle(shuffled)
        a, b = t_interval(data), t_interval(shuffled)
        assert a.lo == pytest.approx(b.lo, rel=1e-9, abs=1e-9) and a.hi == pytest.approx(b.hi, rel=1e-9, abs=1e-9)


class TestTwoSample:
    def test_against_scipy(self):
        lo, hi = -1.5500391953828194, 4.383372528716153  # scipy ttest_ind(...).confidence_interval
        iv = two_sample_diff_interval([1, 2, 3, 5], [0, 2, 2], 0.95)
        assert iv.lo == pytest.approx(lo, abs=1e-9) and iv.hi == pytest.approx(hi, abs=1e-9)

    def test_identical_samples_centered(self):
        a = [1.0, 4.0, 2.0, 7.0]
        iv = two_sample_diff_interval(a, a)
        assert iv.midpoint == pytest.approx(0.0, abs=1e-12)

    def test_swap_negates(self):
        a, b = [1.0, 2.5, 3.0], [0.0, -1.0, 4.0, 2.0]
        iv, sw = two_sample_diff_interval(a, b), two_sample_diff_interval(b, a)
        assert sw.lo == pytest.approx(-iv.hi) and sw.hi == pytest.approx(-iv.lo)

    def test_tight_for_large_groups(self):
        rng = substream(3, "two-sample-check")
        inside = 0
        for _ in range(200):
            iv = TwoSampleTInterval(0.95)(TwoSampleData(5 + rng.standard_normal(200), rng.standard_normal(200)))
            inside += iv.is_subset_of(Interval(4.5, 5.5))
        assert inside / 200 >= 0.99

    def test_too_small(self):
        with pytest.raises(UsageError):
            two_sample_diff_interval([1.0], [1.0, 2.0])


class TestRegression:
    X = np.column_stack([np.ones(5), [1, 2, 3, 4, 5]])
    y = np.array([1.1, 1.9, 3.2, 3.9, 5.1])

    @pytest.mark.parametrize("coord, lo, hi", [
        (1, 0.8440926083649593, 1.1559073916350406),
        (0, -0.47708632009642293, 0.5570863200964252),
    ])
    def test_against_lstsq(self, coord, lo, hi):
        iv = regression_coef_interval(self.X, self.y, coord, 0.95)
        assert iv.lo == pytest.approx(lo, abs=1e-9) and iv.hi == pytest.approx(hi, abs=1e-9)

    def test_coord_out_of_range(self):
        with pytest.raises(UsageError):
            regression_coef_interval(self.X, self.y, 2)

    def test_rank_deficient(self):
        X = np.column_stack([np.ones(5), np.ones(5)])
        with pytest.raises((UsageError, EstimationError)):
            ols(X, self.y)

    def test_noiseless_gravity(self):
        slope = math.sqrt(2 / 9.8)
        h = np.arange(1.0, 11.0)
        data = GravityData(h, 0.2 + slope * np.sqrt(h))
        b1 = RegressionCoefficientInterval(1, 0.95)(data)
        assert b1.lo == pytest.approx(0.451754, abs=1e-6) and b1.width < 1e-9
        g = RegressionCoefficientInterval(1, 0.95, "g")(data)
        assert g.lo == pytest.approx(9.8, abs=1e-3) and g.hi == pytest.approx(9.8, abs=1e-3)

    def test_g_map_endpoints(self):
        iv = g_interval_from_slope(Interval(0.4, 0.5))
        assert (iv.lo, iv.hi) == (pytest.approx(2 / 0.25), pytest.approx(2 / 0.16))

    def test_g_map_needs_positive_slope(self):
        with pytest.raises(EstimationError):
            g_interval_from_slope(Interval(-0.1, 0.5))

    def test_design(self):
        assert np.allclose(gravity_design([1.0, 4.0]), [[1, 1], [1, 2]])


class TestCoverage:
    @pytest.mark.parametrize("make", [
        lambda rng: (ZInterval(2.0, 0.9), 2.0 * rng.standard_normal(5)),
        lambda rng: (TInterval(0.9), 2.0 * rng.standard_normal(5)),
    ])
    def test_frequentist(self, make):
        rng = substream(5, "coverage")
        hits = 0
        n = 10_000
        for _ in range(n):
            est, x = make(rng)
            hits += est(x).contains_value(0.0)
        se = math.sqrt(0.9 * 0.1 / n)
        assert abs(hits / n - 0.9) < 3 * se

    def test_bayesian(self):
        rng = substream(6, "bayes-coverage")
        est = NormalPosteriorCredible(0.0, 1.0, 1.0, 0.95)
        n = 10_000
        theta = rng.standard_normal(n)
        x = theta + rng.standard_normal(n)
        hits = sum(est([xi]).contains_value(t) for xi, t in zip(x, theta))
        assert abs(hits / n - 0.95) < 3 * math.sqrt(0.95 * 0.05 / n)
