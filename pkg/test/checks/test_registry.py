"""
Tests for the check registry
"""
import math

from checks import get_check_info, list_checks, search_checks
from checks.registry import CheckOutcome, CheckRegistry

BUILTIN = [
    "gauss-green",
    "radial-atom",
    "complement",
    "convex-combination",
    "lambda-difference",
    "boundary-divergence",
    "additivity",
    "consistency",
    "sobolev",
    "divergence",
    "ac-bound",
    "perimeter",
    "staircase",
    "probe",
    "coarea-nd",
    "compact-support",
    "leibniz",
    "gauss-green-1d",
    "integration-by-parts",
    "coarea",
    "coarea-hypothesis",
    "arctan-masses",
    "arctan-atom",
    "lsc",
    "compactness",
    "tvmin",
    "identity",
]


class TestCheckOutcome:
    def test_identity_residual(self):
        outcome = CheckOutcome.identity(1.5, 1.25)
        assert outcome.residual == 0.25
        assert not outcome.flagged

    def test_identity_with_non_finite_side(self):
        assert math.isinf(CheckOutcome.identity(math.inf, 1.0).residual)
        assert math.isinf(CheckOutcome.identity(math.nan, 1.0).residual)

    def test_bound(self):
        assert CheckOutcome.bound(1.0, 2.0).residual == 0.0
        assert CheckOutcome.bound(3.0, 2.0).residual == 1.0


class TestCheckRegistry:
    def test_decorator_without_arguments(self):
        local = CheckRegistry()

        @local.register_check
        def my_check(scenario, integrator):
            """First line
            and more"""
            return CheckOutcome.identity(0.0, 0.0)

        info = local.get_check_info("my-check")
        assert info is not None
        assert info.description == "First line"
        assert info.tolerance == 1e-8
        assert local.get_check("my-check") is my_check

    def test_decorator_with_arguments(self):
        local = CheckRegistry()

        @local.register_check(name="custom", tolerance=1e-3, description="Given", tags=["a", "b"])
        def whatever(scenario, integrator):
            return CheckOutcome.identity(0.0, 0.0)

        info = local.get_check_info("custom")
        assert info.tolerance == 1e-3
        assert info.description == "Given"
        assert local.search_checks("a") == ["custom"]
        assert local.search_checks("missing") == []
        assert local.get_check_info("whatever") is None

    def test_builtin_checks_registered(self):
        names = list_checks()
        for name in BUILTIN:
            assert name in names, name

    def test_builtin_descriptions(self):
        for name in BUILTIN:
            assert get_check_info(name).description

    def test_search_builtin_by_tag(self):
        one_d = search_checks("1d")
        assert "leibniz" in one_d
        assert "gauss-green-1d" in one_d
        assert "gauss-green" not in one_d

    def test_builtin_tolerances(self):
        assert get_check_info("radial-atom").tolerance == 1e-15
        assert get_check_info("compact-support").tolerance == 1e-12
        assert get_check_info("tvmin").tolerance == 1e-4
