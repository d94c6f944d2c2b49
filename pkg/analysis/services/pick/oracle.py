"""
Coefficient oracle for diagonal kernels.

A diagonal kernel k = sum a_n <z,w>^n with a_0 > 0 is complete Pick exactly
when 1/k has no positive coefficient past the constant term. Truncated at
order M this gives an exact test independent of any point sampling.
"""

from dataclasses import dataclass
from typing import Optional
import logging

from ..kernels.series import ReciprocalSeries, reciprocal_series
from ..kernels.specs import KernelSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleVerdict:
    """Coefficient-sign verdict at a fixed order"""

    kernel: KernelSpec
    order: int
    is_np: bool
    first_failing_index: Optional[int]
    series: ReciprocalSeries

    def to_dict(self):
        return {
            "kernel": self.kernel.to_dict(),
            "order": self.order,
            "is_np": self.is_np,
            "first_failing_index": self.first_failing_index,
            "series": self.series.to_dict(),
        }


def diagonal_np_oracle(spec: KernelSpec, order: int) -> OracleVerdict:
    """
    Check c_n <= 0 for 1 <= n <= order.

    Raises:
        UnsupportedVariantError: If spec has no diagonal series
    """
    series = reciprocal_series(spec, order)
    first_failing = next(
        (n for n in range(1, order + 1) if series.coeffs[n] > 0), None
    )
    if first_failing is not None:
        logger.info(
            f"{spec.name} fails the coefficient test at n={first_failing} "
            f"(c_n = {series.coeffs[first_failing]})"
        )
    return OracleVerdict(
        kernel=spec,
        order=order,
        is_np=first_failing is None,
        first_failing_index=first_failing,
        series=series,
    )
