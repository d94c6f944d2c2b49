"""
Finite-dimensional Douglas factorization.

A X = B has a solution with ||X|| <= 1 exactly when A A* - B B* is positive
semi-definite. The solver returns the minimal-norm solution from the
singular value decomposition and certifies the contract.
"""

import math
from dataclasses import dataclass
from typing import Optional
import logging

import numpy as np
import scipy.linalg

from ..exceptions import FactorizationError, ShapeMismatchError
from ..pick.psd import PsdVerdict, psd_check

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOLERANCE = 1e-10

# Singular values within this factor of the cutoff make the rank decision borderline
BORDERLINE_FACTOR = 10.0


@dataclass(frozen=True, eq=False)
class FactorizationResult:
    """Minimal-norm solution of A X = B with its certificates"""

    solution: np.ndarray
    residual: float
    solution_norm: float
    majorized: bool
    feasible: bool
    borderline: bool
    rank: int
    majorization: PsdVerdict
    tolerance: float

    @property
    def is_contraction(self) -> bool:
        return self.feasible and self.solution_norm <= 1 + self.tolerance

    def to_dict(self):
        return {
            "solution": [[[float(v.real), float(v.imag)] for v in row] for row in self.solution],
            "residual": self.residual,
            "solution_norm": self.solution_norm,
            "majorized": self.majorized,
            "feasible": self.feasible,
            "borderline": self.borderline,
            "rank": self.rank,
            "tolerance": self.tolerance,
            "majorization": self.majorization.to_dict(),
        }


def _as_matrix(value, name: str) -> np.ndarray:
    matrix = np.atleast_2d(np.asarray(value, dtype=complex))
    if matrix.ndim != 2:
        raise ShapeMismatchError(f"{name} must be a matrix, got shape {matrix.shape}")
    return matrix


def operator_norm(matrix: np.ndarray) -> float:
    """Largest singular value (0 for an empty matrix)"""
    if matrix.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(matrix)[0])


def _check_rows(A: np.ndarray, B: np.ndarray):
    if A.shape[0] != B.shape[0]:
        raise ShapeMismatchError(
            f"A and B need equal row counts, got {A.shape[0]} and {B.shape[0]}"
        )


def majorization_check(A, B, tol: float = DEFAULT_RANK_TOLERANCE) -> PsdVerdict:
    """
    Verdict on A A* - B B*.

    Raises:
        ShapeMismatchError: If A and B have different row counts
    """
    A = _as_matrix(A, "A")
    B = _as_matrix(B, "B")
    _check_rows(A, B)
    difference = A @ A.conj().T - B @ B.conj().T
    return psd_check((difference + difference.conj().T) / 2, tol)


def _rank(singular_values: np.ndarray, cutoff: float) -> int:
    return int(np.sum(singular_values > cutoff))


def _near_cutoff(singular_values: np.ndarray, cutoff: float) -> bool:
    if cutoff == 0:
        return False
    return bool(
        np.any(
            (singular_values > cutoff / BORDERLINE_FACTOR)
            & (singular_values < cutoff * BORDERLINE_FACTOR)
        )
    )


def douglas_solve(A, B, tol: float = DEFAULT_RANK_TOLERANCE) -> FactorizationResult:
    """
    Minimal-norm solution of A X = B.

    Singular values of A below tol * sigma_max are treated as zero. The
    system is feasible when B has no component outside the span of the
    retained left singular vectors of A, up to tol * max(sigma_max, ||B||).
    Decisions close to either cutoff are flagged as borderline rather than
    silently resolved.

    Args:
        A: m x n matrix
        B: m x p matrix
        tol: Relative singular value cutoff

    Returns:
        FactorizationResult with X = V S^+ U* B

    Raises:
        ShapeMismatchError: If A and B have different row counts
        FactorizationError: If A A* >= B B* but the solution clearly is not a contraction
    """
    A = _as_matrix(A, "A")
    B = _as_matrix(B, "B")
    _check_rows(A, B)

    U, s, Vh = scipy.linalg.svd(A, full_matrices=False)
    sigma_max = float(s[0]) if s.size else 0.0
    cutoff = tol * sigma_max
    rank = _rank(s, cutoff)

    range_basis = U[:, :rank]
    range_defect = operator_norm(B - range_basis @ (range_basis.conj().T @ B))
    range_cutoff = tol * max(sigma_max, operator_norm(B))
    feasible = range_defect <= range_cutoff
    borderline = _near_cutoff(s, cutoff) or _near_cutoff(np.array([range_defect]), range_cutoff)

    inverse = np.zeros_like(s)
    inverse[:rank] = 1.0 / s[:rank]
    solution = Vh.conj().T @ (inverse[:, None] * (U.conj().T @ B))

    residual = operator_norm(A @ solution - B)
    solution_norm = operator_norm(solution)
    majorization = majorization_check(A, B, tol)

    logger.debug(
        f"Douglas solve {A.shape}x{B.shape}: rank={rank}, range defect="
        f"{range_defect:.3e}, residual={residual:.3e}, norm={solution_norm:.12f}"
    )

    if borderline:
        logger.warning(
            f"Rank decision within a factor {BORDERLINE_FACTOR} of the cutoff {cutoff:.3e}"
        )

    if majorization.is_psd and not (feasible and solution_norm <= 1 + tol):
        if not borderline and (not feasible or solution_norm > 1 + math.sqrt(tol)):
            raise FactorizationError(
                f"A A* >= B B* but the minimal solution has norm {solution_norm:.12f} "
                f"(feasible={feasible})"
            )
        logger.warning(
            f"Majorized system with solution norm {solution_norm:.12f}; flagged borderline"
        )
        borderline = True

    return FactorizationResult(
        solution=solution,
        residual=residual,
        solution_norm=solution_norm,
        majorized=majorization.is_psd,
        feasible=feasible,
        borderline=borderline,
        rank=rank,
        majorization=majorization,
        tolerance=tol,
    )


def null_space_perturbation(A, B_cols: int, rng: np.random.Generator, scale: float = 1.0) -> Optional[np.ndarray]:
    """
    Random Z with A Z = 0 (None when A has trivial null space).

    Adding Z to a solution of A X = B gives another exact solution.
    """
    A = _as_matrix(A, "A")
    kernel = scipy.linalg.null_space(A)
    if kernel.shape[1] == 0:
        return None
    coefficients = rng.standard_normal((kernel.shape[1], B_cols)) + 1j * rng.standard_normal(
        (kernel.shape[1], B_cols)
    )
    return scale * kernel @ coefficients
