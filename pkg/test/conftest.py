"""
Pytest configuration and shared fixtures
"""
import os

import numpy as np
import pytest

from core.config import get_settings, set_settings
from core.quadrature import BoxIntegrator


@pytest.fixture(autouse=True)
def clear_environment():
    """Clear PAIRING_CALC_* variables and cached settings before each test"""
    # Save original environment
    original_env = os.environ.copy()

    for var in [name for name in os.environ if name.startswith("PAIRING_CALC_")]:
        del os.environ[var]
    set_settings(None)

    yield

    # Restore original environment
    os.environ.clear()
    os.environ.update(original_env)
    set_settings(None)


@pytest.fixture
def rng():
    """Generator seeded from the settings seed"""
    return np.random.default_rng(get_settings().seed)


@pytest.fixture
def integrator():
    return BoxIntegrator()
