"""
(A, λ)-perimeters, exact where the field has closed-form traces and a
certified lower bound over a finite test-function dictionary otherwise.
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from core.errors import PairingCalcError
from core.quadrature import BoxIntegrator
from fields.field import FieldND
from fields.testfunc import TestFunction, bump
from measures.selector import LambdaSelector

from .apply import pairing_apply
from .boxes import Box, BoxSet, representative_point
from .measure import perimeter

logger = logging.getLogger(__name__)

RADIUS_FRACTIONS = (0.9, 0.5, 0.25)


class PerimeterResult(BaseModel):
    """P_{A,λ}(E, W) or a lower bound for it."""

    field: str = Field(..., description="Catalog name of the field")
    value: float = Field(..., description="Perimeter, or the best lower bound found")
    lower_bound_only: bool = Field(
        ..., description="The field has no closed-form traces; value is a supremum over a finite dictionary"
    )
    dictionary_size: int = Field(0, description="Test functions tried for the lower bound")


def _room(x: np.ndarray, window: Box) -> float:
    lo = np.asarray(window[0], dtype=float)
    hi = np.asarray(window[1], dtype=float)
    return float(np.min(np.minimum(x - lo, hi - x)))


def face_dictionary(E: BoxSet, window: Box) -> List[TestFunction]:
    """Bumps with sup 1 centred on the face cells of ∂*E, at several radii."""
    out = []
    for face, axis, _ in E.boundary_faces(window):
        centre = np.asarray(representative_point(*face))
        room = _room(centre, window)
        if room <= 0.0:
            continue
        for fraction in RADIUS_FRACTIONS:
            out.append(bump(tuple(centre), fraction * room))
    return out


def perimeter_estimate(
    field_: FieldND,
    E: BoxSet,
    lam: LambdaSelector,
    window: Optional[Box] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> PerimeterResult:
    """
    |(A, Dχ_E)_λ|(W). Without closed-form traces this is
    max |⟨(A, Dχ_E)_λ, φ⟩| over the face dictionary, each φ having |φ| ≤ 1.
    """
    window = window or field_.window
    if field_.closed_form_traces:
        value = perimeter(field_, E, lam, window, integrator)
        return PerimeterResult(field=field_.name, value=value, lower_bound_only=False)

    integrator = integrator or BoxIntegrator()
    best, tried = 0.0, 0
    for phi in face_dictionary(E, window):
        try:
            value = abs(pairing_apply(field_, E, lam, phi, integrator))
        except PairingCalcError as exc:
            logger.debug(f"perimeter dictionary member skipped: {exc}")
            continue
        tried += 1
        best = max(best, value)
    logger.warning(f"perimeter of {field_.name} is a lower bound over {tried} test functions: {best:.12g}")
    return PerimeterResult(field=field_.name, value=best, lower_bound_only=True, dictionary_size=tried)
