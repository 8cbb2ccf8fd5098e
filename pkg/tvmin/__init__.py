"""
Discrete minimization of |(A, Du)| + ‖u − g‖_{L^p(|A|)} on cell grids, the
discrete BV^A seminorm, and the lower semicontinuity and compactness harnesses.
"""

from .energy import energy, fidelity_term, grad, grad_adjoint, seminorm_grid, tv_term
from .grid import EnergyParams, GridFunction, load_grid_csv, save_grid_csv
from .harness import (
    CompactnessReport,
    LscReport,
    SequenceFamily,
    arctan_family,
    compactness_failure_demo,
    constant_family,
    liminf_estimate,
    lsc_harness,
)
from .solver import SolverResult, coordinate_descent, minimize, operator_norm_bound

__all__ = [
    "CompactnessReport",
    "EnergyParams",
    "GridFunction",
    "LscReport",
    "SequenceFamily",
    "SolverResult",
    "arctan_family",
    "compactness_failure_demo",
    "constant_family",
    "coordinate_descent",
    "energy",
    "fidelity_term",
    "grad",
    "grad_adjoint",
    "liminf_estimate",
    "load_grid_csv",
    "lsc_harness",
    "minimize",
    "operator_norm_bound",
    "save_grid_csv",
    "seminorm_grid",
    "tv_term",
]
