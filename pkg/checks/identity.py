"""
∫_{(0,1)^n} (1 + |y|²)^{−(n+1)/2} dy = ω_{n+1} / 2^{n+1}
"""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from core.config import Settings
from core.errors import BadParams
from core.quadrature import integrate_box
from fields.catalog import unit_ball_volume

logger = logging.getLogger(__name__)

# relative tolerances per dimension
IDENTITY_TOLERANCES = {1: 1e-10, 2: 1e-8, 3: 1e-7, 4: 1e-6}


class IdentityIntegral(BaseModel):
    n: int
    value: float = Field(..., description="Cubature of the integral")
    target: float = Field(..., description="ω_{n+1} / 2^{n+1}")
    residual: float = Field(..., description="|value − target| / target")

    @property
    def tolerance(self) -> float:
        return IDENTITY_TOLERANCES[self.n]


def identity_integral(n: int, settings: Optional[Settings] = None) -> IdentityIntegral:
    """
    Cube integral of the Poisson-type kernel against the volume of the unit
    ball one dimension up.

    Raises:
        BadParams: If n is outside 1..4
    """
    if n not in IDENTITY_TOLERANCES:
        raise BadParams(f"n must be between 1 and 4, got {n}")

    def kernel(y: np.ndarray) -> float:
        return float((1.0 + float(np.dot(y, y))) ** (-(n + 1) / 2.0))

    value = integrate_box(kernel, (0.0,) * n, (1.0,) * n, settings=settings)
    target = unit_ball_volume(n + 1) / 2 ** (n + 1)
    residual = abs(value - target) / target
    logger.debug(f"identity integral n={n}: {value:.17g} against {target:.17g}")
    return IdentityIntegral(n=n, value=value, target=target, residual=residual)
