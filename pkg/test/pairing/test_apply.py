"""
Tests for the pairing distribution on test functions
"""

import pytest
from scipy import integrate

from core.errors import BadParams
from fields import bump, catalog
from measures.selector import LambdaSelector
from pairing import BoxSet, SmoothScalar, StepFunctionND, pairing_apply

ORIGIN = (0.0, 0.0)


def bump_integral(radius):
    """∫ (1 − (t/r)²)³ dt over (−r, r)"""
    return radius * 32.0 / 35.0


class TestPairingApply:
    """⟨(A, Du)_λ, φ⟩ = −∫u^λ φ d div A − ∫u^λ ∇φ·dA"""

    def test_radial_atom_cancels(self, integrator):
        field = catalog("radial")
        E = BoxSet.cube(0.0, 1.0, 2)
        phi = bump((0.0, 0.0), 0.5)
        # φ is supported away from {x_j = 1}, so only the atom (1/4 − λ(0))φ(0) remains
        value = pairing_apply(field, E, LambdaSelector.at_point(ORIGIN, 0.25), phi, integrator)
        assert abs(value) <= 1e-8
        value = pairing_apply(field, E, LambdaSelector.at_point(ORIGIN, 1.0), phi, integrator)
        assert value == pytest.approx(-0.75, abs=1e-8)

    def test_constant_field_parallel_half_space(self, integrator):
        field = catalog("constant")
        E = BoxSet.half_space(2, 1, 0.0)
        value = pairing_apply(field, E, LambdaSelector.constant(0.5), bump((0.3, 0.1), 0.7), integrator)
        assert abs(value) <= 1e-10

    def test_heaviside_lower_box(self, integrator):
        field = catalog("heaviside")
        E = BoxSet.box((-1.0, -1.0), (1.0, 0.0))
        phi = bump((0.8, -0.5), (0.5, 0.4))
        value = pairing_apply(field, E, LambdaSelector.constant(0.0), phi, integrator)
        expected = -((1.0 - (0.2 / 0.5) ** 2) ** 3) * bump_integral(0.4)
        assert value == pytest.approx(expected, rel=1e-9)

    def test_step_function_scalar(self, integrator):
        field = catalog("constant")
        u = StepFunctionND(2, ((2.0, ((0.0, -5.0), (5.0, 5.0))),))
        phi = bump((0.0, 0.0), 0.5)
        # (A, Du) = 2 H¹ ⌞ {x₁ = 0}
        value = pairing_apply(field, u, LambdaSelector.constant(0.5), phi, integrator)
        assert value == pytest.approx(2.0 * bump_integral(0.5), rel=1e-9)

    def test_smooth_scalar(self, integrator):
        field = catalog("constant")
        u = SmoothScalar.affine((3.0, 0.0))
        phi = bump((0.0, 0.0), 0.5)
        value = pairing_apply(field, u, LambdaSelector.constant(0.5), phi, integrator)
        assert value == pytest.approx(3.0 * bump_integral(0.5) ** 2, rel=1e-9)

    def test_constants_are_killed(self, integrator):
        for name in ("radial", "heaviside", "staircase"):
            u = SmoothScalar.affine((0.0, 0.0), 4.0)
            phi = bump((0.2, 0.1), 0.4)
            assert abs(pairing_apply(catalog(name), u, LambdaSelector.constant(0.3), phi, integrator)) <= 1e-8

    def test_support_outside_window(self):
        with pytest.raises(BadParams):
            pairing_apply(catalog("vortex"), BoxSet.cube(0, 1, 2), LambdaSelector.constant(0.5), bump((0.8, 0.0), 0.5))

    def test_vortex_principal_value(self, integrator):
        field = catalog("vortex")
        E = BoxSet.box((-1.0, -1.0), (1.0, 0.0))
        phi = bump((0.3, 0.0), (0.2, 0.5))
        # −∫_E ∇φ·A = −∫ φ(x₁, 0)/x₁ dx₁ away from the origin
        value = pairing_apply(field, E, LambdaSelector.constant(0.5), phi, integrator)
        expected = -integrate.quad(lambda t: (1.0 - ((t - 0.3) / 0.2) ** 2) ** 3 / t, 0.1, 0.5, epsabs=1e-13)[0]
        assert value == pytest.approx(expected, rel=1e-8)
