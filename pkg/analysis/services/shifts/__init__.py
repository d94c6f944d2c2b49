"""
Exact truncated shift models and the identities they satisfy.
"""

from .identities import (
    BALL,
    BERGMAN,
    BIDISK,
    IDENTITY_SPACES,
    IdentityReport,
    falling_factorial_ratio,
    verify_ball_identity,
    verify_bergman_identity,
    verify_bidisk_identity,
    verify_identities,
    verify_identity,
)
from .models import OperatorModel, adjoint_defect, apply_word, build_shift
from .scalar import generating_polynomial, poly_identity_check
from .spaces import SPACES, MonomialSpace, get_space

__all__ = [
    "BALL",
    "BERGMAN",
    "BIDISK",
    "IDENTITY_SPACES",
    "SPACES",
    "IdentityReport",
    "MonomialSpace",
    "OperatorModel",
    "adjoint_defect",
    "apply_word",
    "build_shift",
    "falling_factorial_ratio",
    "generating_polynomial",
    "get_space",
    "poly_identity_check",
    "verify_ball_identity",
    "verify_bergman_identity",
    "verify_bidisk_identity",
    "verify_identities",
    "verify_identity",
]
