"""
Douglas factorization: majorization, minimal-norm solutions, multiplier matrices.
"""

from .corona import corona_block_matrix, corona_condition_check
from .factor import (
    DEFAULT_RANK_TOLERANCE,
    FactorizationResult,
    douglas_solve,
    majorization_check,
    null_space_perturbation,
    operator_norm,
)
from .polynomials import Polynomial, PolynomialMatrix

__all__ = [
    "DEFAULT_RANK_TOLERANCE",
    "FactorizationResult",
    "Polynomial",
    "PolynomialMatrix",
    "corona_block_matrix",
    "corona_condition_check",
    "douglas_solve",
    "majorization_check",
    "null_space_perturbation",
    "operator_norm",
]
