"""
Kernel-compressed majorization for matrices of multipliers.

M_Phi M_Phi* >= M_Psi M_Psi* holds on H^2(k) exactly when the block matrix

    [(Phi(z_i) Phi(z_j)* - Psi(z_i) Psi(z_j)*)_{ab} k(z_i, z_j)]

is PSD for every finite point set, because M_Phi* sends k(., w) e to
k(., w) Phi(w)* e. One point set can refute the inequality but never prove it.
"""

from typing import List, Sequence
import logging

from ..exceptions import ShapeMismatchError
from ..kernels.matrices import HermitianMatrix, hermitian_from_upper
from ..kernels.points import PointSet
from ..kernels.specs import DEFAULT_POINT_MARGIN, KernelSpec, Point, conj
from ..pick.psd import DEFAULT_PSD_TOLERANCE, PsdVerdict, psd_check
from .polynomials import PolynomialMatrix

logger = logging.getLogger(__name__)


def _values_at(matrix: PolynomialMatrix, point: Point) -> List[List]:
    return [[matrix[i, j].evaluate(point) for j in range(matrix.cols)] for i in range(matrix.rows)]


def _outer(left: Sequence[Sequence], right: Sequence[Sequence], a: int, b: int):
    """(X Y*)_{ab} for nested row lists"""
    total = 0
    for x, y in zip(left[a], right[b]):
        total = total + x * conj(y)
    return total


def corona_block_matrix(
    phi: PolynomialMatrix,
    psi: PolynomialMatrix,
    spec: KernelSpec,
    pts: PointSet,
    margin: float = DEFAULT_POINT_MARGIN,
) -> HermitianMatrix:
    """
    Block Hermitian matrix of the compressed operator difference.

    Rows are ordered point-major: index i * r + a for point i and row a.

    Raises:
        ShapeMismatchError: If Phi and Psi differ in row count or the
            variable count is not the kernel dimension
    """
    if phi.rows != psi.rows:
        raise ShapeMismatchError(
            f"Phi has {phi.rows} rows but Psi has {psi.rows}"
        )
    for name, matrix in (("Phi", phi), ("Psi", psi)):
        if matrix.variable_count != spec.dimension:
            raise ShapeMismatchError(
                f"{name} has {matrix.variable_count} variables, kernel {spec.name} "
                f"has dimension {spec.dimension}"
            )
    pts.validate_for(spec, margin)

    rows = phi.rows
    phi_values = [_values_at(phi, p) for p in pts]
    psi_values = [_values_at(psi, p) for p in pts]

    size = len(pts) * rows
    values = [[None] * size for _ in range(size)]
    for i in range(len(pts)):
        for j in range(i, len(pts)):
            k_ij = spec.evaluate(pts[i], pts[j])
            for a in range(rows):
                for b in range(rows):
                    row, col = i * rows + a, j * rows + b
                    if col < row:
                        continue
                    symbol = _outer(phi_values[i], phi_values[j], a, b) - _outer(
                        psi_values[i], psi_values[j], a, b
                    )
                    values[row][col] = symbol * k_ij
    return hermitian_from_upper(values)


def corona_condition_check(
    phi: PolynomialMatrix,
    psi: PolynomialMatrix,
    spec: KernelSpec,
    pts: PointSet,
    tol: float = DEFAULT_PSD_TOLERANCE,
) -> PsdVerdict:
    """
    Test M_Phi M_Phi* >= M_Psi M_Psi* on the kernel sections at pts.

    Args:
        phi: r x p polynomial matrix
        psi: r x q polynomial matrix
        spec: Kernel of the ambient space
        pts: Sample points
        tol: PSD tolerance (relative)

    Returns:
        PsdVerdict; non-PSD certifies the operator inequality fails

    Raises:
        ShapeMismatchError: On row or variable count mismatch
        KernelDomainError: If a point is outside the kernel's domain
    """
    block = corona_block_matrix(phi, psi, spec, pts)
    verdict = psd_check(block, tol)
    logger.debug(
        f"Corona check on {spec.name} with {len(pts)} points: "
        f"min eigenvalue {verdict.min_eigenvalue:.6e}"
    )
    return verdict
