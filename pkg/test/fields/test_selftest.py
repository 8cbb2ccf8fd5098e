"""
Tests for the weak divergence identity on catalog fields
"""

import math

import numpy as np
import pytest

from core.errors import BadParams
from fields import (
    bump,
    catalog,
    divergence_selftest,
    flux_integral,
    plateau,
    random_test_functions,
)

PLANAR_ENTRIES = [
    "radial",
    "constant",
    "heaviside",
    "transversal",
    "vortex",
    "segment",
    "staircase",
    "measure_components",
]


class TestDivergenceSelftest:
    """∫φ d div A = −∫∇φ·dA"""

    def test_radial_bump_at_origin(self, integrator):
        field = catalog("radial")
        phi = bump((0.0, 0.0), 0.5)
        assert divergence_selftest(field, phi, integrator) <= 1e-8
        # the flux side alone recovers φ(0) = 1
        assert math.isclose(flux_integral(field, phi, integrator), -1.0, rel_tol=1e-8)

    def test_radial_off_centre(self, integrator):
        field = catalog("radial")
        phi = bump((0.2, -0.1), (0.6, 0.4))
        assert divergence_selftest(field, phi, integrator) <= 1e-8

    def test_constant(self, integrator):
        field = catalog("constant", {"direction": [0.3, -1.2]})
        assert divergence_selftest(field, bump((0.4, 0.1), 0.7), integrator) <= 1e-12

    def test_heaviside_face(self, integrator):
        field = catalog("heaviside")
        phi = plateau((-0.5, -0.5), (0.5, 0.5))
        assert divergence_selftest(field, phi, integrator) <= 1e-10

    def test_support_must_stay_inside(self, integrator):
        with pytest.raises(BadParams):
            divergence_selftest(catalog("vortex"), bump((0.9, 0.0), 0.5), integrator)

    @pytest.mark.parametrize("name", PLANAR_ENTRIES)
    def test_randomized_bumps(self, name, integrator):
        field = catalog(name)
        rng = np.random.default_rng(7)
        for phi in random_test_functions(field, 5, rng, max_radius=0.6):
            assert divergence_selftest(field, phi, integrator) <= 1e-8
