"""
One-dimensional BV calculus: representatives, derivatives and λ-pairings.
"""

from .engine import (
    IdentityResidual,
    MembershipCertificate,
    PairingResult1D,
    approx_limits,
    compact_support_identity,
    derivative,
    distance_l1_A,
    distance_l1_divA,
    gauss_green_1d,
    in_class_X,
    integrate_representative,
    integration_by_parts_1d,
    lambda_representative,
    pairing_1d,
    seminorm_bva,
    truncate,
)
from .extreal import NEG_INF, POS_INF, ExtReal

__all__ = [
    "ExtReal",
    "IdentityResidual",
    "MembershipCertificate",
    "NEG_INF",
    "POS_INF",
    "PairingResult1D",
    "approx_limits",
    "compact_support_identity",
    "derivative",
    "distance_l1_A",
    "distance_l1_divA",
    "gauss_green_1d",
    "in_class_X",
    "integrate_representative",
    "integration_by_parts_1d",
    "lambda_representative",
    "pairing_1d",
    "seminorm_bva",
    "truncate",
]
