"""
Ordering of kernels as positive semi-definite functions.

lower <= c * upper holds on a point set when c * gram(upper) - gram(lower)
is PSD there. When s <= k <= c s the two spaces carry the same multipliers
with norms equivalent up to c.
"""

from fractions import Fraction
from typing import Union
import logging

import scipy.linalg

from ..exceptions import MatrixValidationError
from ..kernels.evaluation import gram
from ..kernels.points import PointSet
from ..kernels.specs import KernelSpec
from .psd import DEFAULT_PSD_TOLERANCE, PsdVerdict, psd_check

logger = logging.getLogger(__name__)


def kernel_dominance(
    lower: KernelSpec,
    upper: KernelSpec,
    pts: PointSet,
    scale: Union[int, Fraction] = 1,
    tol: float = DEFAULT_PSD_TOLERANCE,
) -> PsdVerdict:
    """Verdict on scale * gram(upper) - gram(lower)"""
    difference = gram(upper, pts).scaled(scale) - gram(lower, pts)
    return psd_check(difference, tol)


def dominance_constant(lower: KernelSpec, upper: KernelSpec, pts: PointSet) -> float:
    """
    Smallest c with gram(upper) <= c * gram(lower) on pts.

    Solved as the largest generalized eigenvalue of the pencil
    (gram(upper), gram(lower)).

    Raises:
        MatrixValidationError: If gram(lower) is not positive definite on pts
    """
    lower_gram = gram(lower, pts).entries
    upper_gram = gram(upper, pts).entries
    try:
        eigenvalues = scipy.linalg.eigh(upper_gram, lower_gram, eigvals_only=True)
    except scipy.linalg.LinAlgError as e:
        raise MatrixValidationError(
            f"Gram matrix of {lower.name} is not positive definite on these points: {e}"
        )
    constant = float(eigenvalues[-1])
    logger.debug(f"{upper.name} <= {constant:.6f} * {lower.name} on {len(pts)} points")
    return constant
