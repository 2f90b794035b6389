import math

import numpy as np
import pytest
from scipy import stats

from tern.core import UsageError
from tern.data import DataError, GravityData, TwoSampleData
from tern.estimators import EstimationError
from tern.models import (
    MODELS,
    gravity_regression_model,
    normal_mean_model,
    simulate_gravity_data,
    two_sample_difference_model,
    two_sample_normal_model,
)
from tern.rng import substream

HEIGHTS = tuple(float(h) for h in range(1, 11))
ALL_MODELS = [
    (normal_mean_model(1.5, 3), [0.4]),
    (two_sample_normal_model(2.0, 2), [1.0, -1.0]),
    (two_sample_difference_model(None, 2), [0.5, 1.0, 1.5]),
    (two_sample_difference_model(1.0, 1), [0.5, 1.0]),
    (gravity_regression_model(HEIGHTS, 2), [9.8, 0.2, 0.05]),
]


class TestNormalMean:
    def test_log_density_standard(self):
        m = normal_mean_model(1.0, 1)
        assert m.log_density(np.array([0.0]), [0.0]) == pytest.approx(-0.5 * math.log(2 * math.pi))

    def test_log_density_against_scipy(self):
        m = normal_mean_model(2.0, 3)
        z = np.array([0.3, -1.0, 2.2])
        assert m.log_density(z, [0.5]) == pytest.approx(stats.norm(0.5, 2.0).logpdf(z).sum())

    def test_sampler_mean(self):
        z = normal_mean_model(1.0, 1).sample([2.0], substream(0, "m"), size=100_000)
        assert abs(z.mean() - 2.0) < 0.02

    def test_estimate(self):
        assert normal_mean_model().estimate([1, 2, 3])[0] == 2.0

    def test_invalid_sigma(self):
        with pytest.raises(UsageError):
            normal_mean_model(0.0)

    def test_wrong_theta_shape(self):
        with pytest.raises(UsageError):
            normal_mean_model().log_density(np.zeros(1), [0.0, 1.0])


class TestTwoSample:
    def test_factorizes(self):
        m = two_sample_normal_model(1.3, 2)
        z = np.array([0.1, -0.4, 2.0, 1.1])
        joint = m.log_density(z, [0.2, 1.5])
        parts = m.group_log_density(z[:2], 0.2) + m.group_log_density(z[2:], 1.5)
        assert abs(joint - parts) < 1e-12

    def test_swap_symmetry_at_equal_means(self):
        m = two_sample_normal_model(1.0, 1)
        z = m.sample([0.0, 0.0], substream(1, "swap"), size=50_000)
        assert stats.ks_2samp(z[:, 0], z[:, 1]).pvalue > 0.001

    def test_estimate(self):
        assert np.allclose(two_sample_normal_model().estimate(TwoSampleData([0, 2], [4, 6])), [1, 5])

    def test_difference_estimate(self):
        est = two_sample_difference_model().estimate(TwoSampleData([0, 2], [4, 6]))
        assert np.allclose(est, [-4, 5, math.sqrt(2)])


class TestGravity:
    def test_free_fall(self):
        m = gravity_regression_model([4.9, 1.0])
        assert m.mean_times([9.8, 0.0, 0.0])[0] == pytest.approx(1.0)

    def test_noiseless_estimate(self):
        data = simulate_gravity_data(30, 9.8, 0.2, 0.0, HEIGHTS, substream(0, "g"))
        g, b0, sd = gravity_regression_model(HEIGHTS).estimate(data)
        assert g == pytest.approx(9.8, abs=1e-6) and b0 == pytest.approx(0.2, abs=1e-9) and sd < 1e-9

    def test_permutation_invariance(self):
        m = gravity_regression_model(HEIGHTS)
        z = m.sample([9.8, 0.2, 0.05], substream(2, "perm"))
        perm = np.random.default_rng(0).permutation(len(HEIGHTS))
        mp = gravity_regression_model(np.array(HEIGHTS)[perm])
        assert m.log_density(z, [9.7, 0.2, 0.05]) == pytest.approx(mp.log_density(z[perm], [9.7, 0.2, 0.05]))

    def test_negative_slope(self):
        h = np.array(HEIGHTS)
        with pytest.raises(EstimationError):
            gravity_regression_model(HEIGHTS).estimate(GravityData(h, 1 - 0.1 * np.sqrt(h)))

    @pytest.mark.parametrize("heights", [[1.0, -1.0], [2.0, 2.0]])
    def test_invalid_heights(self, heights):
        with pytest.raises(UsageError):
            gravity_regression_model(heights)

    def test_nonpositive_height_data(self):
        with pytest.raises(DataError):
            GravityData([0.0, 1.0], [0.1, 0.2])


class TestCommon:
    @pytest.mark.parametrize("model, theta", ALL_MODELS, ids=lambda v: getattr(v, "name", ""))
    def test_expected_log_density(self, model, theta):
        z = model.sample(theta, substream(4, "eld"), size=10_000)
        ll = model.log_density(z, theta)
        se = ll.std(ddof=1) / math.sqrt(ll.size)
        assert abs(ll.mean() - model.expected_log_density(theta)) < 3 * se

    @pytest.mark.parametrize("model, theta", ALL_MODELS, ids=lambda v: getattr(v, "name", ""))
    def test_own_samples_finite(self, model, theta):
        z = model.sample(theta, substream(5, "finite"), size=1000)
        assert z.shape == (1000, model.future_size)
        assert np.all(np.isfinite(model.log_density(z, theta)))

    @pytest.mark.parametrize("model, theta", ALL_MODELS, ids=lambda v: getattr(v, "name", ""))
    def test_deterministic(self, model, theta):
        a = model.sample(theta, substream(6, "det"), size=10)
        b = model.sample(theta, substream(6, "det"), size=10)
        assert np.array_equal(a, b)

    def test_registry(self):
        assert set(MODELS) >= {"normal", "two-sample", "gravity"}

    def test_batched_theta(self):
        m = normal_mean_model()
        th = np.array([[0.0], [100.0]])
        z = m.sample(th, substream(0, "batch"), size=2)
        assert z[1, 0] > 50 > z[0, 0]
