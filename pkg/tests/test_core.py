import pytest
from hypothesis import given

from oracles import brute_decision
from strategies import endpoints, intervals, regions_1d
from tern import AgnosticTest, Decision, HalfSpace, Interval, as_standard_test, decide_from_region, run_test
from tern.core import UsageError
from tern.estimators import ZInterval
from tern.regions import box, empty_region

NONNEG = HalfSpace(0, ">=", 0.0)


class TestDecision:
    def test_encoding(self):
        assert [d.value for d in Decision] == [0.0, 0.5, 1.0]

    def test_parse_and_str(self):
        for d in Decision:
            assert Decision.parse(str(d).upper()) is d

    def test_parse_unknown(self):
        with pytest.raises(ValueError):
            Decision.parse("maybe")


class TestDecideFromRegion:
    @pytest.mark.parametrize("region, expected", [
        (Interval(2.0, 3.5), Decision.ACCEPT),
        (Interval(-3.0, -1.0), Decision.REJECT),
        (Interval(-0.5, 1.5), Decision.AGNOSTIC),
    ])
    def test_examples(self, region, expected):
        assert decide_from_region(region, NONNEG) is expected

    def test_boundary_flags(self):
        assert decide_from_region(Interval(0, 1), NONNEG) is Decision.ACCEPT
        assert decide_from_region(Interval(0, 1), HalfSpace(0, ">", 0)) is Decision.AGNOSTIC
        assert decide_from_region(Interval(-1, 0, True, False), NONNEG) is Decision.REJECT

    def test_dim_mismatch(self):
        with pytest.raises(UsageError):
            decide_from_region(box((0, 1), (0, 1)), NONNEG)

    def test_empty_region(self):
        with pytest.raises(UsageError):
            decide_from_region(empty_region(1), NONNEG)

    @given(regions_1d(), regions_1d())
    def test_matches_brute_force(self, r, h):
        if r.is_empty():
            return
        expected = brute_decision(r.contains, h.contains, endpoints(r, h))
        assert str(decide_from_region(r, h)) == expected

    @given(regions_1d(), regions_1d())
    def test_complement_duality(self, r, h):
        if r.is_empty():
            return
        d, dc = decide_from_region(r, h), decide_from_region(r, h.complement())
        assert (d is Decision.ACCEPT) == (dc is Decision.REJECT)
        assert (d is Decision.REJECT) == (dc is Decision.ACCEPT)

    @given(intervals(), intervals(), regions_1d())
    def test_shrinking_keeps_assertive(self, r, r2, h):
        small = r & r2
        if small.is_empty():
            return
        d = decide_from_region(r, h)
        if d.is_assertive:
            assert decide_from_region(small, h) is d


class TestZTest:
    ztest = AgnosticTest(NONNEG, ZInterval(sigma=1.0, level=0.95))

    @pytest.mark.parametrize("x, expected", [
        (1e100, Decision.ACCEPT),
        (-0.5, Decision.AGNOSTIC),
        (-2.5, Decision.REJECT),
        (1.9601, Decision.ACCEPT),
        (1.9599, Decision.AGNOSTIC),
        (-1.9599, Decision.AGNOSTIC),
        (-1.9601, Decision.REJECT),
    ])
    def test_thresholds(self, x, expected):
        assert run_test(self.ztest, [x]) is expected

    def test_region_endpoints(self):
        # frozen from scipy.stats.norm.interval(0.95, loc=-2.5)
        iv = self.ztest.region([-2.5])
        assert iv.lo == pytest.approx(-4.459963984540054, abs=1e-12)
        assert iv.hi == pytest.approx(-0.540036015459946, abs=1e-12)


class TestStandardTest:
    z = AgnosticTest(NONNEG, ZInterval(1.0, 0.95))

    def test_coerce_agnostic(self):
        assert as_standard_test(self.z, Decision.ACCEPT)([-0.5]) is Decision.ACCEPT
        assert as_standard_test(self.z, Decision.REJECT)([-0.5]) is Decision.REJECT

    @pytest.mark.parametrize("target", [Decision.ACCEPT, Decision.REJECT])
    def test_assertive_unchanged(self, target):
        assert as_standard_test(self.z, target)([-2.5]) is Decision.REJECT
        assert as_standard_test(self.z, target)([5.0]) is Decision.ACCEPT

    def test_matches_one_sided_z(self):
        # do-not-reject iff x > Phi^-1(0.025) = -1.96 for the coerced test
        std = as_standard_test(self.z, Decision.ACCEPT)
        for x in (-3.0, -1.97, -1.95, -0.5, 0.0, 2.0):
            expected = Decision.ACCEPT if x > -1.959963984540054 else Decision.REJECT
            assert std([x]) is expected

    def test_agnostic_target_rejected(self):
        with pytest.raises(UsageError):
            as_standard_test(self.z, Decision.AGNOSTIC)
