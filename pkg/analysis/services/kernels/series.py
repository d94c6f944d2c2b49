"""
Reciprocal power series of diagonal kernels.

For k = sum a_n x^n with a_0 > 0, 1/k = sum c_n x^n is computed exactly.
Splitting c by sign gives the formal one-positive-square factorization
1 = k (p p* - q q*): the positive coefficients feed p, the negative ones q.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple
import logging

from ..exceptions import UnsupportedVariantError
from .specs import KernelSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReciprocalSeries:
    """Coefficients c_0..c_M of 1/k through order M"""

    coeffs: Tuple[Fraction, ...]
    kernel_coeffs: Tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def positive_part(self) -> Tuple[int, ...]:
        return tuple(n for n, c in enumerate(self.coeffs) if c > 0)

    @property
    def negative_part(self) -> Tuple[int, ...]:
        return tuple(n for n, c in enumerate(self.coeffs) if c < 0)

    def convolution(self) -> Tuple[Fraction, ...]:
        """(a * c)_m for m = 0..M; equals (1, 0, ..., 0) exactly"""
        return tuple(
            sum(
                (self.kernel_coeffs[j] * self.coeffs[m - j] for j in range(m + 1)),
                Fraction(0),
            )
            for m in range(self.order + 1)
        )

    def to_dict(self):
        return {
            "order": self.order,
            "coeffs": [str(c) for c in self.coeffs],
            "positive_part": list(self.positive_part),
            "negative_part": list(self.negative_part),
        }


def reciprocal_series(spec: KernelSpec, order: int) -> ReciprocalSeries:
    """
    Invert the diagonal series of spec through the given order.

    c_0 = 1/a_0 and c_m = -(1/a_0) sum_{j=1..m} a_j c_{m-j}.

    Raises:
        UnsupportedVariantError: If spec has no diagonal series
    """
    if not spec.has_diagonal_series:
        raise UnsupportedVariantError(
            f"Reciprocal series needs a diagonal kernel, got '{spec.name}'"
        )
    a = spec.diagonal_coefficients(order)
    inverse_a0 = Fraction(1) / a[0]
    c = [inverse_a0]
    for m in range(1, order + 1):
        c.append(-inverse_a0 * sum((a[j] * c[m - j] for j in range(1, m + 1)), Fraction(0)))

    logger.debug(f"Reciprocal series of {spec.name} through order {order}: {c}")
    return ReciprocalSeries(coeffs=tuple(c), kernel_coeffs=a)
