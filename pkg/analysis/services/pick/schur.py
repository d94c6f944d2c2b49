"""
Schur-complement test for complete Pick kernels.

For a base point b the kernel

    L_b(y, x) = [k(y,x) k(b,b) - k(y,b) k(b,x)] / k(y,x)

is positive semi-definite when k is a complete Pick kernel. On a finite
point set the test is one-sided: a non-PSD Schur matrix certifies that k is
not complete Pick, a PSD one is only evidence.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..kernels.evaluation import PointLike, base_value
from ..kernels.matrices import HermitianMatrix, hermitian_from_upper
from ..kernels.points import PointSet, as_point, sample_points
from ..kernels.specs import DEFAULT_POINT_MARGIN, KernelSpec, Point
from .psd import DEFAULT_PSD_TOLERANCE, PsdVerdict, psd_check

logger = logging.getLogger(__name__)

# |k(y,x)| at or below this counts as a vanishing kernel value
VANISHING_KERNEL_TOLERANCE = 1e-14


@dataclass(frozen=True, eq=False)
class NpReport:
    """Result of one Schur-complement test"""

    kernel: KernelSpec
    points: PointSet
    base_point: Point
    verdict: Optional[PsdVerdict]
    schur_matrix: Optional[HermitianMatrix]
    kernel_zero_pairs: Tuple[Tuple[int, int], ...] = ()
    seed: Optional[int] = None

    @property
    def is_psd(self) -> Optional[bool]:
        return None if self.verdict is None else self.verdict.is_psd

    @property
    def evidence_only(self) -> bool:
        """A PSD outcome (or no verdict) never certifies the Pick property"""
        return self.verdict is None or self.verdict.is_psd

    @property
    def min_eigenvalue(self) -> Optional[float]:
        return None if self.verdict is None else self.verdict.min_eigenvalue

    def to_dict(self):
        return {
            "kernel": self.kernel.to_dict(),
            "base": [[float(complex(c).real), float(complex(c).imag)] for c in self.base_point],
            "points": self.points.to_list(),
            "min_eigenvalue": self.min_eigenvalue,
            "is_psd": self.is_psd,
            "evidence_only": self.evidence_only,
            "seed": self.seed,
            "kernel_zero_pairs": [list(pair) for pair in self.kernel_zero_pairs],
            "schur_matrix": None if self.schur_matrix is None else self.schur_matrix.to_list(),
            "verdict": None if self.verdict is None else self.verdict.to_dict(),
        }


def np_test(
    spec: KernelSpec,
    pts: PointSet,
    base: PointLike,
    tol: float = DEFAULT_PSD_TOLERANCE,
    seed: Optional[int] = None,
    margin: float = DEFAULT_POINT_MARGIN,
) -> NpReport:
    """
    Build the Schur-complement matrix on pts and test it for positivity.

    Args:
        spec: Kernel under test
        pts: Sample points
        base: Base point of the Schur complement
        tol: PSD tolerance (relative)
        seed: Seed that produced pts, recorded in the report
        margin: Boundary margin for point validation

    Returns:
        NpReport; when k vanishes at some pair the report lists the pairs
        and carries no verdict

    Raises:
        DegenerateBaseError: If k(base, base) <= 0
        KernelDomainError: If a point or the base is outside the domain
    """
    base_point = as_point(base)
    pts.validate_for(spec, margin)
    k_bb = base_value(spec, base_point, margin)

    size = len(pts)
    to_base = [spec.evaluate(p, base_point) for p in pts]
    from_base = [spec.evaluate(base_point, p) for p in pts]
    values = [[None] * size for _ in range(size)]
    zero_pairs: List[Tuple[int, int]] = []
    for i in range(size):
        for j in range(i, size):
            k_ij = spec.evaluate(pts[i], pts[j])
            if abs(k_ij) <= VANISHING_KERNEL_TOLERANCE:
                zero_pairs.append((i, j))
                continue
            if pts[i] == base_point or pts[j] == base_point:
                values[i][j] = 0 * k_ij
                continue
            values[i][j] = (k_ij * k_bb - to_base[i] * from_base[j]) / k_ij

    if zero_pairs:
        logger.warning(
            f"Kernel {spec.name} vanishes at {len(zero_pairs)} pair(s); no verdict"
        )
        return NpReport(
            kernel=spec,
            points=pts,
            base_point=base_point,
            verdict=None,
            schur_matrix=None,
            kernel_zero_pairs=tuple(zero_pairs),
            seed=seed,
        )

    schur = hermitian_from_upper(values)
    verdict = psd_check(schur, tol)
    if not verdict.is_psd:
        logger.info(
            f"Kernel {spec.name} certified not complete Pick: Schur matrix min "
            f"eigenvalue {verdict.min_eigenvalue:.6e}"
        )
    return NpReport(
        kernel=spec,
        points=pts,
        base_point=base_point,
        verdict=verdict,
        schur_matrix=schur,
        seed=seed,
    )


def base_point_sweep(
    spec: KernelSpec,
    pts: PointSet,
    bases: Sequence[PointLike],
    tol: float = DEFAULT_PSD_TOLERANCE,
) -> List[NpReport]:
    """Run np_test at every base point"""
    return [np_test(spec, pts, base, tol) for base in bases]


def origin(spec: KernelSpec) -> Point:
    return as_point([0] * spec.dimension)


def falsify_np(
    spec: KernelSpec,
    trials: int,
    size: int,
    seed: int,
    tol: float = DEFAULT_PSD_TOLERANCE,
    radius: float = 0.9,
    base: Optional[PointLike] = None,
) -> Optional[NpReport]:
    """
    Seeded random search for a point set whose Schur matrix is not PSD.

    Each trial draws its own seed from the master generator; the report
    records it so the falsifying point set can be regenerated.

    Returns:
        The first falsifying NpReport, or None when every trial passed
    """
    rng = np.random.default_rng(seed)
    base_point = origin(spec) if base is None else as_point(base)
    for trial in range(trials):
        trial_seed = int(rng.integers(0, 2**31 - 1))
        pts = sample_points(spec, size, trial_seed, radius)
        report = np_test(spec, pts, base_point, tol, seed=trial_seed)
        if report.verdict is not None and not report.verdict.is_psd:
            logger.info(
                f"Falsified {spec.name} on trial {trial + 1}/{trials} (seed={trial_seed})"
            )
            return report
    logger.debug(f"No falsifying point set for {spec.name} in {trials} trials")
    return None
