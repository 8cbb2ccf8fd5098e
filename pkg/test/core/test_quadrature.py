"""
Tests for quadrature over boxes
"""
import math

import numpy as np
import pytest

from core.quadrature import integrate_box, quad1d


class TestQuad1d:
    def test_polynomial(self):
        assert quad1d(lambda x: x * x, 0.0, 3.0) == pytest.approx(9.0, rel=1e-12)

    def test_empty_interval(self):
        assert quad1d(lambda x: 1.0, 1.0, 1.0) == 0.0
        assert quad1d(lambda x: 1.0, 2.0, 1.0) == 0.0

    def test_kink(self):
        assert quad1d(abs, -1.0, 2.0, points=[0.0]) == pytest.approx(2.5, rel=1e-12)


class TestBoxIntegrator:
    def test_volume(self, integrator):
        value = integrator.integrate(lambda x: 1.0, (0.0, 0.0, 0.0), (1.0, 2.0, 0.5))
        assert value == pytest.approx(1.0, rel=1e-12)

    def test_flat_axis_integrates_the_face(self, integrator):
        # face {x = 1} × (0, 2) of f(x, y) = x y
        value = integrator.integrate(lambda p: p[0] * p[1], (1.0, 0.0), (1.0, 2.0))
        assert value == pytest.approx(2.0, rel=1e-12)

    def test_point_evaluation(self, integrator):
        assert integrator.integrate(lambda p: p[0] + p[1], (0.5, 0.25), (0.5, 0.25)) == 0.75

    def test_inverted_box(self, integrator):
        assert integrator.integrate(lambda p: 1.0, (1.0, 0.0), (0.0, 1.0)) == 0.0

    def test_splits(self, integrator):
        value = integrator.integrate(lambda p: float(p[0] > 0.3), (0.0, 0.0), (1.0, 1.0), splits={0: [0.3]})
        assert value == pytest.approx(0.7, rel=1e-12)

    def test_corner_singularity(self, integrator):
        value = integrator.integrate(
            lambda p: 1.0 / float(np.linalg.norm(p)), (0.0, 0.0), (1.0, 1.0), singular_points=[(0.0, 0.0)]
        )
        assert value == pytest.approx(2.0 * math.log(1.0 + math.sqrt(2.0)), rel=1e-6)

    def test_interior_singularity_is_split(self, integrator):
        value = integrator.integrate(
            lambda p: 1.0 / float(np.linalg.norm(p)), (-1.0, -1.0), (1.0, 1.0), singular_points=[(0.0, 0.0)]
        )
        assert value == pytest.approx(8.0 * math.log(1.0 + math.sqrt(2.0)), rel=1e-6)

    def test_wrapper(self):
        assert integrate_box(lambda p: p[0], (0.0,), (2.0,)) == pytest.approx(2.0, rel=1e-12)
