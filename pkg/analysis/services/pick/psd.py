"""
Eigenvalue-based positivity checks with a witness vector.
"""

from dataclasses import dataclass
from typing import Union
import logging

import numpy as np
import scipy.linalg

from ..kernels.matrices import HermitianMatrix

logger = logging.getLogger(__name__)

DEFAULT_PSD_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class PsdVerdict:
    """
    Outcome of a positivity test.

    ``tolerance`` is the effective (scaled) tolerance that decided the
    verdict: is_psd holds exactly when min_eigenvalue >= -tolerance.
    """

    is_psd: bool
    min_eigenvalue: float
    witness: np.ndarray
    tolerance: float
    eigenvalues: np.ndarray

    @property
    def numerical_rank(self) -> int:
        """Number of eigenvalues above the tolerance"""
        return int(np.sum(self.eigenvalues > self.tolerance))

    def to_dict(self):
        return {
            "is_psd": self.is_psd,
            "min_eigenvalue": float(self.min_eigenvalue),
            "tolerance": float(self.tolerance),
            "numerical_rank": self.numerical_rank,
            "witness": [[float(v.real), float(v.imag)] for v in self.witness],
        }


def effective_tolerance(matrix: HermitianMatrix, tol: float) -> float:
    return tol * max(1.0, matrix.max_abs)


def psd_check(
    m: Union[HermitianMatrix, np.ndarray], tol: float = DEFAULT_PSD_TOLERANCE
) -> PsdVerdict:
    """
    Decide positive semi-definiteness from the smallest eigenvalue.

    Args:
        m: Hermitian matrix (arrays are validated, asymmetry beyond 1e-12 is rejected)
        tol: Relative tolerance, scaled by max(1, max |m_ij|)

    Returns:
        PsdVerdict with the minimal eigenvalue and a unit eigenvector witness

    Raises:
        MatrixValidationError: If the input is not Hermitian
    """
    if not isinstance(m, HermitianMatrix):
        m = HermitianMatrix(entries=np.asarray(m, dtype=complex))

    eigenvalues, eigenvectors = scipy.linalg.eigh(m.entries)
    min_eigenvalue = float(eigenvalues[0])
    witness = eigenvectors[:, 0]
    witness = witness / np.linalg.norm(witness)
    tolerance = effective_tolerance(m, tol)
    is_psd = min_eigenvalue >= -tolerance

    logger.debug(
        f"PSD check on {m.size}x{m.size}: min eigenvalue {min_eigenvalue:.6e}, "
        f"tolerance {tolerance:.3e}, psd={is_psd}"
    )
    return PsdVerdict(
        is_psd=bool(is_psd),
        min_eigenvalue=min_eigenvalue,
        witness=witness,
        tolerance=tolerance,
        eigenvalues=eigenvalues,
    )
