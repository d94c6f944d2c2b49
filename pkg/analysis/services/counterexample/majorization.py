"""
Majorization A_N A_N* >= B_N B_N* for the counterexample, two ways.
"""

import logging

from ..douglas.corona import corona_condition_check
from ..kernels.points import PointSet
from ..kernels.specs import KernelSpec
from ..pick.psd import DEFAULT_PSD_TOLERANCE, PsdVerdict
from ..shifts.identities import IdentityReport, verify_bidisk_identity
from .instance import build_counterexample

logger = logging.getLogger(__name__)


def counterexample_majorization(
    n: int, pts: PointSet, tol: float = DEFAULT_PSD_TOLERANCE
) -> PsdVerdict:
    """
    Kernel-section form: the block matrix of A_N, B_N first rows on the
    bidisk Hardy kernel. Its entries are sum_{a+b<=N-1} (z_i conj z_j)^a
    (w_i conj w_j)^b, a polynomial Gram matrix, so the verdict is PSD.
    """
    instance = build_counterexample(n)
    verdict = corona_condition_check(
        instance.a_row, instance.b_row, KernelSpec.builtin("hardy_bidisk"), pts, tol
    )
    logger.debug(f"Counterexample N={n} majorization on {len(pts)} points: psd={verdict.is_psd}")
    return verdict


def counterexample_operator_identity(n: int, max_degree: int) -> IdentityReport:
    """
    Operator form: A_N A_N* - B_N B_N* is the projection onto degrees <= N-1.

    With S, W the bidisk shifts, A_N A_N* = I + sum_{j=1..N} S^{N-j+1} W^j W*^j S*^{N-j+1}
    and B_N B_N* = sum_{j=0..N} S^{N-j} W^j W*^j S*^{N-j}, which is the
    bidisk identity.
    """
    return verify_bidisk_identity(n, max_degree)
