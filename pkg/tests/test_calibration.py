
import pytest

from tern.calibration import CHUNK, estimate_fcp, estimate_levels, mc_std_error, normal_prior
from tern.core import AgnosticTest, Decision, UsageError, as_standard_test
from tern.estimators import ZInterval
from tern.models import normal_mean_model
from tern.regions import HalfSpace, Interval

H0 = HalfSpace(0, ">=", 0.0)
MODEL = normal_mean_model(1.0, 1)
# frozen from scipy.stats.norm.cdf
P_REJECT_AT_0 = 0.025
P_ACCEPT_AT_5 = 0.9988172507018026


class Shifted:
    """A z-interval moved by ``shift`` standard errors: a deliberately broken estimator."""

    def __init__(self, shift):
        self.shift = shift

    def __call__(self, x):
        iv = ZInterval(1.0, 0.95)(x)
        return Interval(iv.lo + self.shift, iv.hi + self.shift)


class TestLevels:
    ztest = AgnosticTest(H0, ZInterval(1.0, 0.95))

    def test_boundary_and_far_point(self):
        rep = estimate_levels(self.ztest, MODEL, [0.0, 5.0], 20_000, 1)
        at0, at5 = rep.points
        assert abs(at0.reject - P_REJECT_AT_0) < 3 * mc_std_error(P_REJECT_AT_0, 20_000)
        assert abs(at5.accept - P_ACCEPT_AT_5) < 3 * mc_std_error(P_ACCEPT_AT_5, 20_000)
        assert at0.reject + at0.accept + at0.agnostic == pytest.approx(1.0)

    def test_sups_restricted_to_sides(self):
        rep = estimate_levels(self.ztest, MODEL, [-2, -0.1, 0, 0.1, 2], 5000, 2)
        assert rep.alpha_hat == max(p.reject for p in rep.points if p.theta[0] >= 0)
        assert rep.beta_hat == max(p.accept for p in rep.points if p.theta[0] < 0)
        assert set(rep.type3_rate) == {(-2.0,), (-0.1,), (0.0,), (0.1,), (2.0,)}

    def test_one_sided_grid(self):
        rep = estimate_levels(self.ztest, MODEL, [0.5, 1.0], 100, 0)
        assert rep.beta_hat is None and rep.mc_std_errors["beta_hat"] is None and rep.notes
        assert rep.to_dict()["beta_hat"] is None

    def test_wider_region_fewer_errors(self):
        grid = [-1.0, -0.2, 0.0, 0.2, 1.0]
        narrow = estimate_levels(AgnosticTest(H0, ZInterval(1.0, 0.8)), MODEL, grid, 5000, 3)
        wide = estimate_levels(AgnosticTest(H0, ZInterval(1.0, 0.99)), MODEL, grid, 5000, 3)
        assert wide.alpha_hat <= narrow.alpha_hat and wide.beta_hat <= narrow.beta_hat
        for a, b in zip(narrow.points, wide.points):
            assert b.agnostic >= a.agnostic

    def test_standard_test_never_agnostic(self):
        std = as_standard_test(self.ztest, Decision.ACCEPT)
        std.hypothesis = H0
        rep = estimate_levels(std, MODEL, [-1.0, 0.0, 1.0], 2000, 0)
        assert all(p.agnostic == 0.0 for p in rep.points)

    def test_threads_identical(self):
        grid = [-1.0, 0.0, 1.0]
        a = estimate_levels(self.ztest, MODEL, grid, CHUNK + 17, 5)
        b = estimate_levels(self.ztest, MODEL, grid, CHUNK + 17, 5, threads=3)
        assert a.to_dict() == b.to_dict()

    def test_grid_order_irrelevant(self):
        a = estimate_levels(self.ztest, MODEL, [-1.0, 1.0], 500, 5)
        b = estimate_levels(self.ztest, MODEL, [1.0, -1.0], 500, 5)
        assert a.points[0] == b.points[1]

    @pytest.mark.parametrize("n", [0, -1, 2.5])
    def test_bad_n_sims(self, n):
        with pytest.raises(UsageError):
            estimate_levels(self.ztest, MODEL, [0.0], n, 0)

    def test_empty_grid(self):
        with pytest.raises(UsageError):
            estimate_levels(self.ztest, MODEL, [], 10, 0)

    def test_csv_rows(self):
        rep = estimate_levels(self.ztest, MODEL, [0.0], 10, 0)
        assert rep.csv_rows() == [(0.0, 1, rep.points[0].reject, rep.points[0].accept, rep.points[0].agnostic)]


class TestFCP:
    def test_confidence_any_prior(self):
        test = AgnosticTest(H0, ZInterval(1.0, 0.95))
        for mean, sd in [(0.0, 0.5), (1.0, 3.0)]:
            est = estimate_fcp(test, MODEL, normal_prior(mean, sd), 20_000, 4)
            assert est.value <= 0.05 + 3 * est.std_error

    def test_negative_control(self):
        broken = AgnosticTest(H0, Shifted(10.0))
        est = estimate_fcp(broken, MODEL, normal_prior(0.0, 1.0), 20_000, 4)
        # nearly every theta < 0 (prior mass 1/2) is wrongly accepted
        assert est.value > 0.4

    def test_float_and_se(self):
        est = estimate_fcp(AgnosticTest(H0, ZInterval()), MODEL, normal_prior(), 1000, 0)
        assert float(est) == est.value and est.std_error == pytest.approx(mc_std_error(est.value, 1000))

    def test_threads_identical(self):
        test = AgnosticTest(H0, ZInterval())
        a = estimate_fcp(test, MODEL, normal_prior(0, 2), 2 * CHUNK + 5, 9)
        b = estimate_fcp(test, MODEL, normal_prior(0, 2), 2 * CHUNK + 5, 9, threads=4)
        assert a == b

    def test_bad_prior(self):
        with pytest.raises(UsageError):
            normal_prior(0.0, 0.0)
