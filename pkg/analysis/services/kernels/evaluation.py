"""
Kernel evaluation, Gram matrices and projection-compressed Gram matrices.
"""

from fractions import Fraction
from typing import Sequence, Union
import logging

from ..exceptions import DegenerateBaseError
from .matrices import HermitianMatrix, hermitian_from_upper
from .points import Coordinate, PointSet, as_point
from .specs import DEFAULT_POINT_MARGIN, KernelSpec, Point, Scalar

logger = logging.getLogger(__name__)

PointLike = Union[Coordinate, Sequence[Coordinate]]


def kernel_eval(
    spec: KernelSpec,
    z: PointLike,
    w: PointLike,
    margin: float = DEFAULT_POINT_MARGIN,
) -> Scalar:
    """
    Evaluate k(z, w).

    Real rational points on a rational closed form give an exact Fraction;
    anything else gives a float or complex.

    Raises:
        KernelDomainError: If z or w is outside the kernel's open domain
        KernelDomainError: If a closed form overflows floating point at z, w
        ConvergenceError: If a diagonal series is evaluated past its radius
    """
    z_point = as_point(z)
    w_point = as_point(w)
    spec.check_point(z_point, margin)
    spec.check_point(w_point, margin)
    return spec.evaluate(z_point, w_point)


def gram(
    spec: KernelSpec, pts: PointSet, margin: float = DEFAULT_POINT_MARGIN
) -> HermitianMatrix:
    """Gram matrix [k(p_i, p_j)]"""
    pts.validate_for(spec, margin)
    size = len(pts)
    values = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            values[i][j] = spec.evaluate(pts[i], pts[j])
    logger.debug(f"Built {size}x{size} Gram matrix for {spec.name}")
    return hermitian_from_upper(values)


def base_value(spec: KernelSpec, base: Point, margin: float = DEFAULT_POINT_MARGIN):
    """
    k(base, base), checked strictly positive.

    Raises:
        DegenerateBaseError: If k(base, base) <= 0
    """
    spec.check_point(base, margin)
    value = spec.evaluate(base, base)
    real = value.real if isinstance(value, complex) else value
    if not real > 0:
        raise DegenerateBaseError(
            f"k(base, base) = {value} is not positive for base {base}"
        )
    return real


def compress_gram(
    spec: KernelSpec,
    pts: PointSet,
    base: PointLike,
    margin: float = DEFAULT_POINT_MARGIN,
) -> HermitianMatrix:
    """
    Gram matrix of the kernel sections projected off k(., base):

        k(p_i, p_j) - k(p_i, base) k(base, p_j) / k(base, base)

    Rows and columns at a point equal to base are exactly zero.
    """
    base_point = as_point(base)
    pts.validate_for(spec, margin)
    k_bb = base_value(spec, base_point, margin)

    size = len(pts)
    to_base = [spec.evaluate(p, base_point) for p in pts]
    from_base = [spec.evaluate(base_point, p) for p in pts]
    values = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            if pts[i] == base_point or pts[j] == base_point:
                values[i][j] = Fraction(0)
                continue
            values[i][j] = (
                spec.evaluate(pts[i], pts[j]) - to_base[i] * from_base[j] / k_bb
            )
    return hermitian_from_upper(values)
