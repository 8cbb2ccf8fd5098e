"""
Fixtures registering throwaway checks for the executor tests
"""
import pytest

from checks.registry import CheckInfo, CheckOutcome, registry


def _exact(scenario, integrator):
    """Always exact"""
    return CheckOutcome.identity(1.0, 1.0)


def _off_by(scenario, integrator):
    """Residual taken from params.gap"""
    gap = float(scenario.params.get("gap", 0.0))
    return CheckOutcome.identity(1.0 + gap, 1.0)


def _self_tolerant(scenario, integrator):
    """Carries its own tolerance"""
    return CheckOutcome(lhs=0.0, rhs=0.0, residual=0.05, tolerance=0.1)


def _bounded(scenario, integrator):
    """A certified bound only"""
    return CheckOutcome(lhs=2.0, rhs=2.0, residual=0.0, flagged=True, detail="lower bound")


def _broken(scenario, integrator):
    """Raises"""
    raise ZeroDivisionError("boom")


@pytest.fixture
def test_checks(monkeypatch):
    """Register the throwaway checks under test-* names for one test"""
    entries = {
        "test-exact": (_exact, 1e-8),
        "test-off-by": (_off_by, 1e-6),
        "test-self-tolerant": (_self_tolerant, 1e-8),
        "test-bounded": (_bounded, 1e-8),
        "test-broken": (_broken, 1e-8),
    }
    for name, (func, tolerance) in entries.items():
        monkeypatch.setitem(registry._checks, name, CheckInfo(name=name, func=func, tolerance=tolerance, tags=["test"]))
    return list(entries)
