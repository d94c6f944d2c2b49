"""
Kernel definitions, Gram matrices and reciprocal series.
"""

from .evaluation import base_value, compress_gram, gram, kernel_eval
from .matrices import HermitianMatrix
from .points import PointSet, as_point, sample_points
from .series import ReciprocalSeries, reciprocal_series
from .specs import BUILTIN_KERNELS, KernelSpec, list_builtin_kernels

__all__ = [
    "BUILTIN_KERNELS",
    "HermitianMatrix",
    "KernelSpec",
    "PointSet",
    "ReciprocalSeries",
    "as_point",
    "base_value",
    "compress_gram",
    "gram",
    "kernel_eval",
    "list_builtin_kernels",
    "reciprocal_series",
    "sample_points",
]
