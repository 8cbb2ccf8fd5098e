"""
Tests for the lower semicontinuity harness and the compactness counterexample
"""

import math

import pytest

from core.errors import BadParams
from fields.profiles import BumpProfile
from measures import BorelSet1D, Interval1D, LambdaSelector, PiecewiseFunction1D, Poly
from tvmin import arctan_family, compactness_failure_demo, constant_family, liminf_estimate, lsc_harness

INDICES = (10, 100, 1e3, 1e4, 1e5, 1e6)
A_, B_ = 0.5, 1.5


@pytest.fixture
def family():
    return arctan_family(A_, B_)


def _run(family, lam, tol=1e-3):
    return lsc_harness(family.A, family.build, INDICES, family.limit, lam, tol=tol)


class TestLscHarness:
    def test_masses(self, family):
        report = _run(family, LambdaSelector.constant(0.5))
        for k, m in zip(INDICES, report.masses):
            assert m == pytest.approx(A_ * math.atan(k), rel=1e-10)

    def test_lsc_fails_without_convergence(self, family):
        report = _run(family, LambdaSelector.at_point(0.0, 0.0))
        assert report.limit_mass == pytest.approx((A_ + B_) * math.pi / 2, rel=1e-12)
        assert not report.lsc_holds
        assert not report.hypotheses_met
        assert report.l1_divA_distances[-1] == pytest.approx(B_ * math.pi / 2, rel=1e-12)
        assert report.consistent

    def test_balanced_lambda_converges(self, family):
        lam = LambdaSelector.at_point(0.0, B_ / (A_ + B_))
        report = _run(family, lam)
        assert report.limit_mass == pytest.approx(A_ * math.pi / 2, rel=1e-12)
        assert report.l1_divA_distances[-1] == pytest.approx(0.0, abs=1e-12)
        assert report.hypotheses_met
        assert report.lsc_holds
        assert report.l1_A_distances == sorted(report.l1_A_distances, reverse=True)

    def test_balanced_lambda_holds_at_tight_tolerance(self, family):
        # masses reach aπ/2 from below at rate a/k
        lam = LambdaSelector.at_point(0.0, B_ / (A_ + B_))
        report = _run(family, lam, tol=1e-9)
        assert report.masses[-1] < report.limit_mass - 1e-7
        assert report.liminf_estimate == pytest.approx(A_ * math.pi / 2, rel=1e-9)
        assert report.lsc_holds
        assert report.consistent

    def test_upper_lambda_kills_the_atom(self, family):
        report = _run(family, LambdaSelector.at_point(0.0, 1.0))
        assert report.limit_mass == pytest.approx(0.0, abs=1e-12)
        assert report.lsc_holds

    def test_constant_sequence(self):
        domain = Interval1D(-1, 1)
        A = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(0, 1))
        u = PiecewiseFunction1D.from_piece(domain, Poly((1, 2, -1)))
        family = constant_family(u, A)
        report = _run(family, LambdaSelector.constant(0.3), tol=1e-12)
        assert set(report.masses) == {report.limit_mass}
        assert report.lsc_holds and report.hypotheses_met
        assert max(report.l1_A_distances + report.l1_divA_distances) == 0.0

    def test_bad_parameters(self, family):
        with pytest.raises(BadParams):
            lsc_harness(family.A, family.build, (), family.limit, LambdaSelector.constant(0))
        with pytest.raises(BadParams):
            arctan_family(-1.0, 1.0)


class TestCompactnessFailure:
    def test_constant_profile_plane(self):
        report = compactness_failure_demo(2, 1.0, indices=(1, 2, 4))
        assert report.masses == pytest.approx([2.0, 2.0, 2.0], rel=1e-12)
        assert report.limit_mass == 2.0
        assert all(abs(v) <= 1e-8 for v in report.pairing_values)
        assert report.failure_confirmed

    def test_bump_in_three_dimensions(self):
        report = compactness_failure_demo(
            3, BumpProfile(0.0, 1.0, 1.0, 2), indices=(10, 100, 1000), check_pairing=False
        )
        assert report.limit_mass == 4.0
        assert report.masses[-1] == pytest.approx(4.0, abs=1e-5)
        assert report.masses == sorted(report.masses)
        assert report.failure_confirmed

    def test_vanishing_profile_at_origin(self):
        report = compactness_failure_demo(
            2, BumpProfile(0.5, 0.4, 1.0, 2), indices=(1, 10, 100), check_pairing=False
        )
        assert report.masses[0] > 0.0
        assert report.masses[1:] == [0.0, 0.0]
        assert not report.failure_confirmed

    def test_bad_parameters(self):
        with pytest.raises(BadParams):
            compactness_failure_demo(1)
        with pytest.raises(BadParams):
            compactness_failure_demo(2, indices=(0, 1))


class TestLiminfEstimate:
    def test_increasing_tail_is_extrapolated(self):
        ks = [10.0, 100.0, 1e3, 1e4]
        masses = [2.0 - 3.0 / k for k in ks]
        assert liminf_estimate(ks, masses) == pytest.approx(2.0, rel=1e-12)

    def test_decreasing_tail_is_extrapolated(self):
        ks = [10.0, 100.0, 1e3, 1e4]
        masses = [1.0 + 1.0 / k for k in ks]
        assert liminf_estimate(ks, masses) == pytest.approx(1.0, rel=1e-12)

    def test_oscillating_tail_uses_smallest_mass(self):
        ks = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
        masses = [9.0, 9.0, 9.0, 1.5, 1.0, 1.25]
        assert liminf_estimate(ks, masses) == 1.0

    def test_single_index(self):
        assert liminf_estimate([5.0], [0.25]) == 0.25

    def test_mismatched_lengths(self):
        with pytest.raises(BadParams):
            liminf_estimate([1.0, 2.0], [1.0])
