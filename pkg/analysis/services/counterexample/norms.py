"""
Norm certificates for solutions of A_N C = B_N.

The forced unit coefficients give sum_k ||C_{1k}||^2_{L^2(T^2)} >= N+1, and
since the torus supremum of sum_k |C_{1k}|^2 is at least its mean and at
most ||C||^2, every solution has ||C|| >= sqrt(N+1). The search below looks
for better solutions in the exact affine family of polynomial solutions of
bounded degree; the canonical solution already meets the bound.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np
import scipy.optimize

from ..douglas.polynomials import Polynomial, PolynomialMatrix
from ..exceptions import SpecificationError
from ..rational import reduce_rows
from .instance import VARIABLES, a_exponent, canonical_solution, forced_coefficient_check

logger = logging.getLogger(__name__)

DEFAULT_TORUS_GRID = 256
DEFAULT_SEARCH_GRID = 32
DEFAULT_MAX_EVALUATIONS = 200
DEFAULT_NORM_TOLERANCE = 1e-10

# Search parameters are rounded to rationals with at most this denominator
PARAMETER_DENOMINATOR = 1000


@dataclass(frozen=True, eq=False)
class NormCertificate:
    """
    Lower bounds on ||C|| for solutions of A_N C = B_N, and optionally the
    best solution found.

    ``unsquared_bound`` is N+1, the bound obtained when the square in the
    row-norm chain is dropped; the certified operator bound is sqrt(N+1),
    and ``unsquared_bound_holds`` records whether the achieved norm also
    reaches N+1.
    """

    n: int
    l2_lower_bound: Fraction
    operator_norm_lower_bound: float
    achieved_norm: Optional[float] = None
    achieving_solution: Optional[PolynomialMatrix] = None
    optimal: Optional[bool] = None
    first_row_l2: Optional[Fraction] = None
    forced_coefficients: Tuple[bool, ...] = ()
    degree_bound: Optional[int] = None
    torus_grid_size: Optional[int] = None
    search: Dict[str, object] = field(default_factory=dict)

    @property
    def unsquared_bound(self) -> int:
        return self.n + 1

    @property
    def unsquared_bound_holds(self) -> Optional[bool]:
        if self.achieved_norm is None:
            return None
        return self.achieved_norm >= self.unsquared_bound

    def to_dict(self):
        return {
            "n": self.n,
            "l2_lower_bound": self.l2_lower_bound,
            "operator_norm_lower_bound": self.operator_norm_lower_bound,
            "achieved_norm": self.achieved_norm,
            "optimal": self.optimal,
            "first_row_l2": self.first_row_l2,
            "forced_coefficients": list(self.forced_coefficients),
            "degree_bound": self.degree_bound,
            "torus_grid_size": self.torus_grid_size,
            "unsquared_bound": self.unsquared_bound,
            "unsquared_bound_holds": self.unsquared_bound_holds,
            "achieving_solution": (
                None if self.achieving_solution is None else self.achieving_solution.to_list()
            ),
            "search": dict(self.search),
        }


def norm_lower_bound(n: int) -> NormCertificate:
    """
    Raises:
        SpecificationError: If N < 1
    """
    if n < 1:
        raise SpecificationError(f"N must be >= 1, got {n}")
    return NormCertificate(
        n=n,
        l2_lower_bound=Fraction(n + 1),
        operator_norm_lower_bound=math.sqrt(n + 1),
    )


def torus_grid(size: int) -> Tuple[np.ndarray, np.ndarray]:
    """Broadcastable (z, w) on a uniform size x size grid of the torus"""
    if size < 1:
        raise SpecificationError(f"Torus grid size must be >= 1, got {size}")
    angles = 2 * np.pi * np.arange(size) / size
    circle = np.exp(1j * angles)
    return circle[:, None], circle[None, :]


def _sup_singular_value(values: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(values, ord=2, axis=(-2, -1))))


def torus_sup_norm(c: PolynomialMatrix, grid_size: int = DEFAULT_TORUS_GRID) -> float:
    """Max over the grid of the largest singular value of C(z, w)"""
    return _sup_singular_value(c.evaluate_grid(torus_grid(grid_size)))


def first_row_l2(c: PolynomialMatrix) -> Fraction:
    """sum_k ||C_{1k}||^2 on the torus, by Parseval"""
    return sum((entry.l2_norm_squared() for entry in c.entries[0]), Fraction(0))


def _monomials(degree: int) -> List[Tuple[int, int]]:
    return [(d - b, b) for d in range(degree + 1) for b in range(d + 1)]


def solution_directions(n: int, degree_bound: int) -> List[List[Polynomial]]:
    """
    Basis of the column solutions of A_N c = 0 with entries of degree <= degree_bound.

    Each direction is a column (c_0, ..., c_N) of polynomials with
    c_0 + sum_{j>=1} z^{N-j+1} w^j c_j = 0, found by exact elimination on
    coefficient vectors.
    """
    monomials = _monomials(degree_bound)
    unknowns = [(j, e) for j in range(n + 1) for e in monomials]
    equations: Dict[Tuple[int, int], Dict[int, int]] = {}
    for column, (j, exponent) in enumerate(unknowns):
        shift = a_exponent(n, j) or (0, 0)
        target = (exponent[0] + shift[0], exponent[1] + shift[1])
        equations.setdefault(target, {})[column] = 1

    reduced = reduce_rows((equations[t] for t in sorted(equations)), len(unknowns))
    directions = []
    for vector in reduced.null_space():
        entries: List[Dict[Tuple[int, int], Fraction]] = [{} for _ in range(n + 1)]
        for column, value in vector.items():
            j, exponent = unknowns[column]
            entries[j][exponent] = value
        directions.append([Polynomial.from_dict(VARIABLES, entry) for entry in entries])
    logger.debug(
        f"N={n}, degree <= {degree_bound}: {len(unknowns)} unknowns, "
        f"{len(directions)} homogeneous directions"
    )
    return directions


def _combine(
    base: PolynomialMatrix,
    directions: Sequence[Sequence[Polynomial]],
    parameters: Sequence[Sequence[Fraction]],
) -> PolynomialMatrix:
    rows = [list(row) for row in base.entries]
    for k, column_parameters in enumerate(parameters):
        for t, direction in zip(column_parameters, directions):
            if not t:
                continue
            scale = Polynomial.constant(VARIABLES, t)
            for j, entry in enumerate(direction):
                rows[j][k] = rows[j][k] + scale * entry
    return PolynomialMatrix.from_rows(rows, VARIABLES)


def minimal_norm_solve(
    n: int,
    degree_bound: Optional[int] = None,
    torus_grid_size: int = DEFAULT_TORUS_GRID,
    search_grid_size: int = DEFAULT_SEARCH_GRID,
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS,
    tol: float = DEFAULT_NORM_TOLERANCE,
) -> NormCertificate:
    """
    Search exact polynomial solutions of A_N C = B_N for a small torus norm.

    Solutions are C_0 + sum t_{kl} D_l e_k^T where C_0 is the canonical
    solution and the D_l span the homogeneous column solutions. The grid
    supremum of ||C(z,w)|| is convex in t; Powell descent runs on the
    coarse search grid, the parameters are rounded to rationals so the
    candidate stays an exact solution, and the candidate is re-evaluated on
    the full grid. The canonical solution is kept unless the candidate is
    strictly better.

    Args:
        n: Counterexample index N >= 1
        degree_bound: Maximum total degree of the entries of C (default N)
        torus_grid_size: Grid used for the reported norm
        search_grid_size: Grid used inside the descent
        max_evaluations: Objective evaluation budget of the descent
        tol: Optimality tolerance against sqrt(N+1)

    Raises:
        SpecificationError: If degree_bound < N
    """
    certificate = norm_lower_bound(n)
    degree_bound = n if degree_bound is None else degree_bound
    if degree_bound < n:
        raise SpecificationError(
            f"Degree bound {degree_bound} is below N={n}; no polynomial solution exists"
        )

    canonical = canonical_solution(n)
    best = canonical
    best_norm = torus_sup_norm(canonical, torus_grid_size)
    directions = solution_directions(n, degree_bound)
    search: Dict[str, object] = {
        "directions": len(directions),
        "parameters": len(directions) * (n + 1),
        "evaluations": 0,
        "improved": False,
        "search_grid_size": search_grid_size,
    }

    if directions and max_evaluations > 0:
        grid = torus_grid(search_grid_size)
        base_values = canonical.evaluate_grid(grid)
        # (L, g, g, N+1): each direction evaluated as a column
        direction_values = np.array(
            [np.stack([entry.evaluate_grid(grid) for entry in d], axis=-1) for d in directions]
        )
        shape = (n + 1, len(directions))

        def objective(flat: np.ndarray) -> float:
            t = flat.reshape(shape)
            # values[..., j, k] += sum_l t[k, l] D_l[..., j]
            update = np.einsum("kl,lxyj->xyjk", t, direction_values)
            return _sup_singular_value(base_values + update)

        result = scipy.optimize.minimize(
            objective,
            np.zeros(shape[0] * shape[1]),
            method="Powell",
            options={"maxfev": max_evaluations, "xtol": 1e-6, "ftol": 1e-12},
        )
        search["evaluations"] = int(result.nfev)
        search["search_objective"] = float(result.fun)

        parameters = [
            [Fraction(float(v)).limit_denominator(PARAMETER_DENOMINATOR) for v in row]
            for row in np.asarray(result.x).reshape(shape)
        ]
        if any(any(row) for row in parameters):
            candidate = _combine(canonical, directions, parameters)
            candidate_norm = torus_sup_norm(candidate, torus_grid_size)
            search["candidate_norm"] = candidate_norm
            if candidate_norm < certificate.operator_norm_lower_bound - tol:
                # Below the proven bound: the grid misses the candidate's supremum
                logger.debug(f"Rejected candidate for N={n}: grid norm {candidate_norm:.12f}")
            elif candidate_norm < best_norm - tol:
                best, best_norm = candidate, candidate_norm
                search["improved"] = True

    forced = forced_coefficient_check(n, best)
    optimal = best_norm <= certificate.operator_norm_lower_bound + tol
    if best_norm < certificate.operator_norm_lower_bound - tol:
        logger.warning(
            f"Grid norm {best_norm:.12f} for N={n} is below sqrt(N+1); the grid "
            f"of size {torus_grid_size} misses the supremum"
        )
    logger.info(
        f"N={n}: achieved norm {best_norm:.12f}, lower bound "
        f"{certificate.operator_norm_lower_bound:.12f}, optimal={optimal}"
    )
    return NormCertificate(
        n=n,
        l2_lower_bound=certificate.l2_lower_bound,
        operator_norm_lower_bound=certificate.operator_norm_lower_bound,
        achieved_norm=best_norm,
        achieving_solution=best,
        optimal=optimal,
        first_row_l2=first_row_l2(best),
        forced_coefficients=tuple(forced),
        degree_bound=degree_bound,
        torus_grid_size=torus_grid_size,
        search=search,
    )


@dataclass(frozen=True)
class GrowthRow:
    n: int
    lower_bound: float
    achieved_norm: float
    optimal: bool
    l2_lower_bound: Fraction

    def to_dict(self):
        return {
            "n": self.n,
            "lower_bound": self.lower_bound,
            "achieved_norm": self.achieved_norm,
            "optimal": self.optimal,
            "l2_lower_bound": self.l2_lower_bound,
        }


@dataclass(frozen=True)
class GrowthReport:
    rows: Tuple[GrowthRow, ...]

    @property
    def strictly_increasing(self) -> bool:
        bounds = [row.lower_bound for row in self.rows]
        return all(a < b for a, b in zip(bounds, bounds[1:]))

    def to_dict(self):
        return {
            "rows": [row.to_dict() for row in self.rows],
            "strictly_increasing": self.strictly_increasing,
        }


def _growth_row(n: int, degree_bound: Optional[int] = None, **kwargs) -> GrowthRow:
    bound = None if degree_bound is None else max(degree_bound, n)
    certificate = minimal_norm_solve(n, degree_bound=bound, **kwargs)
    return GrowthRow(
        n=n,
        lower_bound=certificate.operator_norm_lower_bound,
        achieved_norm=certificate.achieved_norm,
        optimal=certificate.optimal,
        l2_lower_bound=certificate.l2_lower_bound,
    )


def growth_report(
    n_max: int,
    degree_bound: Optional[int] = None,
    torus_grid_size: int = DEFAULT_TORUS_GRID,
    search_grid_size: int = DEFAULT_SEARCH_GRID,
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS,
    workers: int = 1,
) -> GrowthReport:
    """
    Certificates for N = 1..n_max, in order of N.

    ``degree_bound`` applies to every N (raised to N where smaller); None
    uses degree N throughout.

    Raises:
        SpecificationError: If n_max < 1
    """
    if n_max < 1:
        raise SpecificationError(f"n_max must be >= 1, got {n_max}")
    tasks = list(range(1, n_max + 1))
    solve = partial(
        _growth_row,
        degree_bound=degree_bound,
        torus_grid_size=torus_grid_size,
        search_grid_size=search_grid_size,
        max_evaluations=max_evaluations,
    )
    if workers <= 1 or len(tasks) == 1:
        rows = [solve(n) for n in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(solve, tasks))
    return GrowthReport(rows=tuple(rows))
