"""
Level sets, exceptional sets and the coarea formula for λ-pairings.
"""

from .check import (
    CoareaInequality,
    CoareaReport,
    CoareaScenario,
    coarea_check,
    coarea_check_nd,
    coarea_inequality,
    random_coarea_scenario,
    slice_measure,
    slice_value,
)
from .levelsets import (
    LevelSetSlice,
    exceptional_points_nd,
    exceptional_set,
    level_set_representative,
    level_slice,
    superlevel_set,
)

__all__ = [
    "CoareaInequality",
    "CoareaReport",
    "CoareaScenario",
    "LevelSetSlice",
    "coarea_check",
    "coarea_check_nd",
    "coarea_inequality",
    "exceptional_points_nd",
    "exceptional_set",
    "level_set_representative",
    "level_slice",
    "random_coarea_scenario",
    "slice_measure",
    "slice_value",
    "superlevel_set",
]
