"""
N-dimensional λ-pairings with indicators of box sets, step functions and
smooth scalars: evaluation, explicit measures, perimeters and identities.
"""

from .apply import SmoothScalar, pairing_apply
from .boxes import BOUNDARY, EXTERIOR, INTERIOR, BoxGrid, BoxSet, StepFunctionND
from .identities import (
    AcBound,
    MeasureIdentity,
    ac_bound_check,
    additivity_defect,
    boundary_divergence,
    boundary_divergence_check,
    complement_check,
    consistency_check,
    convex_combination_check,
    gauss_green_check,
    isoperimetric_constant,
    lambda_difference_check,
    sobolev_check,
)
from .measure import (
    PairingMeasureND,
    chi_lambda,
    pairing_measure_box,
    partition_by_density,
    perimeter,
    restrict_to_reduced_boundary,
    weight_by_lambda,
)
from .estimate import PerimeterResult, face_dictionary, perimeter_estimate
from .probes import ProbeReport, not_measure_probe, segment_family, vortex_family
from .staircase import StaircaseReport, alternating_partial_sum, staircase_check, staircase_set

__all__ = [
    "AcBound",
    "BOUNDARY",
    "BoxGrid",
    "BoxSet",
    "EXTERIOR",
    "INTERIOR",
    "MeasureIdentity",
    "PairingMeasureND",
    "PerimeterResult",
    "ProbeReport",
    "SmoothScalar",
    "StaircaseReport",
    "StepFunctionND",
    "ac_bound_check",
    "additivity_defect",
    "alternating_partial_sum",
    "boundary_divergence",
    "boundary_divergence_check",
    "chi_lambda",
    "complement_check",
    "consistency_check",
    "convex_combination_check",
    "face_dictionary",
    "gauss_green_check",
    "isoperimetric_constant",
    "lambda_difference_check",
    "not_measure_probe",
    "perimeter_estimate",
    "pairing_apply",
    "pairing_measure_box",
    "partition_by_density",
    "perimeter",
    "restrict_to_reduced_boundary",
    "segment_family",
    "sobolev_check",
    "staircase_check",
    "staircase_set",
    "vortex_family",
    "weight_by_lambda",
]
