"""
Complete Pick analysis: Schur-complement test, coefficient oracle, kernel ordering.
"""

from .dominance import dominance_constant, kernel_dominance
from .oracle import OracleVerdict, diagonal_np_oracle
from .psd import DEFAULT_PSD_TOLERANCE, PsdVerdict, psd_check
from .schur import NpReport, base_point_sweep, falsify_np, np_test

__all__ = [
    "DEFAULT_PSD_TOLERANCE",
    "NpReport",
    "OracleVerdict",
    "PsdVerdict",
    "base_point_sweep",
    "diagonal_np_oracle",
    "dominance_constant",
    "falsify_np",
    "kernel_dominance",
    "np_test",
    "psd_check",
]
