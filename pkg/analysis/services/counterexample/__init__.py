"""
Bidisk counterexample: row operators with unbounded factorization norm.
"""

from .instance import (
    CounterexampleInstance,
    build_counterexample,
    canonical_solution,
    forced_coefficient_check,
    row_equation_residual,
)
from .majorization import counterexample_majorization, counterexample_operator_identity
from .norms import (
    GrowthReport,
    GrowthRow,
    NormCertificate,
    first_row_l2,
    growth_report,
    minimal_norm_solve,
    norm_lower_bound,
    solution_directions,
    torus_sup_norm,
)

__all__ = [
    "CounterexampleInstance",
    "GrowthReport",
    "GrowthRow",
    "NormCertificate",
    "build_counterexample",
    "canonical_solution",
    "counterexample_majorization",
    "counterexample_operator_identity",
    "first_row_l2",
    "forced_coefficient_check",
    "growth_report",
    "minimal_norm_solve",
    "norm_lower_bound",
    "row_equation_residual",
    "solution_directions",
    "torus_sup_norm",
]
