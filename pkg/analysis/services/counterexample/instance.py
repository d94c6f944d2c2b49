"""
The bidisk factorization counterexample.

For each N the row operators

    A_N = [1, z^N w, z^{N-1} w^2, ..., z w^N]
    B_N = [z^N, z^{N-1} w, ..., w^N]

satisfy A_N A_N* >= B_N B_N* on the Hardy space of the bidisk, but every
polynomial solution C of A_N C = B_N carries a unit coefficient at
z^{N-k} w^k in its k-th first-row entry. Those N+1 forced coefficients keep
the norm of C at least sqrt(N+1).
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple
import logging

from ..douglas.polynomials import Polynomial, PolynomialMatrix
from ..exceptions import NotASolutionError, ShapeMismatchError, SpecificationError

logger = logging.getLogger(__name__)

VARIABLES = 2


def a_exponent(n: int, k: int):
    """Exponent of the k-th (0-indexed) entry of A_N's first row; None for the constant 1"""
    if k == 0:
        return None
    return (n - k + 1, k)


def b_exponent(n: int, k: int):
    """Exponent of the k-th (0-indexed) entry of B_N's first row"""
    return (n - k, k)


def _first_row_matrix(row: List[Polynomial]) -> PolynomialMatrix:
    size = len(row)
    zero = Polynomial.zero(VARIABLES)
    rows = [tuple(row)] + [(zero,) * size for _ in range(size - 1)]
    return PolynomialMatrix.from_rows(rows, VARIABLES)


@dataclass(frozen=True, eq=False)
class CounterexampleInstance:
    """(N+1) x (N+1) matrices A_N and B_N with zero rows below the first"""

    n: int
    a: PolynomialMatrix
    b: PolynomialMatrix

    @property
    def size(self) -> int:
        return self.n + 1

    @property
    def a_row(self) -> PolynomialMatrix:
        return self.a.row(0)

    @property
    def b_row(self) -> PolynomialMatrix:
        return self.b.row(0)

    def to_dict(self):
        return {
            "n": self.n,
            "a_first_row": [str(p) for p in self.a.entries[0]],
            "b_first_row": [str(p) for p in self.b.entries[0]],
        }


def build_counterexample(n: int) -> CounterexampleInstance:
    """
    Raises:
        SpecificationError: If N < 1
    """
    if n < 1:
        raise SpecificationError(f"N must be >= 1, got {n}")
    a_row = [Polynomial.constant(VARIABLES)] + [
        Polynomial.monomial(a_exponent(n, k)) for k in range(1, n + 1)
    ]
    b_row = [Polynomial.monomial(b_exponent(n, k)) for k in range(n + 1)]
    return CounterexampleInstance(n=n, a=_first_row_matrix(a_row), b=_first_row_matrix(b_row))


def canonical_solution(n: int) -> PolynomialMatrix:
    """C with first row equal to B_N's first row and zeros elsewhere"""
    instance = build_counterexample(n)
    return PolynomialMatrix.from_rows(instance.b.entries, VARIABLES, degree_bound=n)


def row_equation_residual(instance: CounterexampleInstance, c: PolynomialMatrix) -> PolynomialMatrix:
    """A_N C - B_N as a polynomial matrix (zero exactly when C solves)"""
    if (c.rows, c.cols) != (instance.size, instance.size) or c.variable_count != VARIABLES:
        raise ShapeMismatchError(
            f"Expected a {instance.size}x{instance.size} matrix in {VARIABLES} variables, "
            f"got {c.rows}x{c.cols} in {c.variable_count}"
        )
    return instance.a @ c - instance.b


def forced_coefficient_check(n: int, c: PolynomialMatrix) -> List[bool]:
    """
    Confirm the unit coefficient of z^{N-k} w^k in C_{1k} for k = 0..N.

    Returns:
        One boolean per first-row entry

    Raises:
        NotASolutionError: If A_N C != B_N; the exception carries the
            nonzero residual polynomials keyed by (row, col)
        ShapeMismatchError: If C has the wrong shape
    """
    instance = build_counterexample(n)
    residual = row_equation_residual(instance, c)
    if not residual.is_zero:
        nonzero: Dict[Tuple[int, int], str] = {
            (i, j): str(residual[i, j])
            for i in range(residual.rows)
            for j in range(residual.cols)
            if not residual[i, j].is_zero
        }
        raise NotASolutionError(
            f"C does not solve A_{n} C = B_{n}: {len(nonzero)} nonzero residual entries",
            residual=nonzero,
        )
    checks = [c[0, k].coefficient(b_exponent(n, k)) == 1 for k in range(n + 1)]
    if not all(checks):
        logger.warning(f"Forced coefficients for N={n} not all 1: {checks}")
    return checks
