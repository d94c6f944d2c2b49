"""
Exact verification of shift identities on truncated models.

Each identity is a linear combination of operator words that should equal
the projection onto the monomials of total degree <= N - 1. The combination
is applied to every monomial whose degree leaves room for the longest word
inside the model, and the result is compared with the projection exactly.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging

from ..exceptions import SpecificationError, TruncationError
from .models import OperatorModel, SparseVector, apply_word, build_shift, power
from .spaces import Exponent

logger = logging.getLogger(__name__)

BERGMAN = "bergman"
BIDISK = "bidisk"
BALL = "ball"

IDENTITY_SPACES = {
    BERGMAN: "bergman_disk",
    BIDISK: "hardy_bidisk",
    BALL: "hardy_ball2",
}

Word = List[OperatorModel]
Combination = List[Tuple[Fraction, Word]]


@dataclass(frozen=True)
class Defect:
    """Nonzero entry of (expression - projection) applied to a monomial"""

    source: Exponent
    target: Exponent
    value: Fraction

    def to_dict(self):
        return {
            "source": list(self.source),
            "target": list(self.target),
            "value": self.value,
        }


@dataclass(frozen=True, eq=False)
class IdentityReport:
    """
    Outcome of an exact identity check.

    ``diagonal`` holds the expression's diagonal on every checked monomial;
    ``min_diagonal`` is its minimum, which must be >= 0 for the ball
    inequality.
    """

    identity: str
    n: int
    max_degree: int
    exact_zero: bool
    defect_entries: Tuple[Defect, ...]
    min_diagonal: Fraction
    diagonal: Tuple[Tuple[Exponent, Fraction], ...]
    displayed_identity: Optional[bool] = None
    closed_form_agrees: Optional[bool] = None

    @property
    def equals_projection(self) -> bool:
        return self.exact_zero

    @property
    def checked_monomials(self) -> Tuple[Exponent, ...]:
        return tuple(exponent for exponent, _ in self.diagonal)

    def to_dict(self):
        return {
            "identity": self.identity,
            "space": IDENTITY_SPACES[self.identity],
            "n": self.n,
            "max_degree": self.max_degree,
            "exact_zero": self.exact_zero,
            "equals_projection": self.equals_projection,
            "min_diagonal": self.min_diagonal,
            "defect_entries": [d.to_dict() for d in self.defect_entries],
            "diagonal": [[list(e), v] for e, v in self.diagonal],
            "displayed_identity": self.displayed_identity,
            "closed_form_agrees": self.closed_form_agrees,
        }


def _check_truncation(n: int, max_degree: int):
    if n < 1:
        raise SpecificationError(f"N must be >= 1, got {n}")
    if max_degree < n + 2:
        raise TruncationError(
            f"Degree {max_degree} is too small for N={n}; need at least {n + 2}"
        )


def _evaluate(combination: Combination, vector: SparseVector) -> SparseVector:
    result: SparseVector = {}
    for coeff, word in combination:
        for index, value in apply_word(word, vector).items():
            updated = result.get(index, Fraction(0)) + coeff * value
            if updated:
                result[index] = updated
            else:
                result.pop(index, None)
    return result


def _gram_word(raising: Word) -> Word:
    """R R* for a word R of shifts"""
    return list(raising) + [op.adjoint() for op in reversed(raising)]


def _run_identity(
    identity: str,
    n: int,
    model: OperatorModel,
    combination: Combination,
    in_projection: Callable[[Exponent], bool],
) -> Tuple[bool, Tuple[Defect, ...], Fraction, Tuple[Tuple[Exponent, Fraction], ...]]:
    checked = [
        i
        for i, exponent in enumerate(model.basis)
        if sum(exponent) <= model.max_degree - n - 1 and i in model.exact_rows
    ]
    defects: List[Defect] = []
    diagonal = []
    for index in checked:
        source = model.basis[index]
        result = _evaluate(combination, {index: Fraction(1)})
        diagonal.append((source, result.get(index, Fraction(0))))
        if in_projection(source):
            result[index] = result.get(index, Fraction(0)) - 1
        for target_index, value in sorted(result.items()):
            if value:
                defects.append(Defect(source, model.basis[target_index], value))

    if defects:
        logger.warning(
            f"Identity {identity} (N={n}, D={model.max_degree}) has {len(defects)} defect(s)"
        )
    min_diagonal = min(value for _, value in diagonal)
    return not defects, tuple(defects), min_diagonal, tuple(diagonal)


def _projection_below(n: int) -> Callable[[Exponent], bool]:
    return lambda exponent: sum(exponent) <= n - 1


def verify_bergman_identity(n: int, max_degree: int) -> IdentityReport:
    """
    Check I + N B^{N+1} B*^{N+1} - (N+1) B^N B*^N = Proj[1, z, ..., z^{N-1}]
    for the Bergman shift B.

    Raises:
        TruncationError: If max_degree < N + 2
    """
    _check_truncation(n, max_degree)
    shift = build_shift(IDENTITY_SPACES[BERGMAN], 0, max_degree)
    combination: Combination = [
        (Fraction(1), []),
        (Fraction(n), _gram_word(power(shift, n + 1))),
        (Fraction(-(n + 1)), _gram_word(power(shift, n))),
    ]
    exact_zero, defects, min_diagonal, diagonal = _run_identity(
        BERGMAN, n, shift, combination, _projection_below(n)
    )
    logger.debug(f"Bergman identity N={n}, D={max_degree}: exact_zero={exact_zero}")
    return IdentityReport(
        identity=BERGMAN,
        n=n,
        max_degree=max_degree,
        exact_zero=exact_zero,
        defect_entries=defects,
        min_diagonal=min_diagonal,
        diagonal=diagonal,
    )


def _bidisk_shifts(space: str, max_degree: int) -> Tuple[OperatorModel, OperatorModel]:
    return build_shift(space, 0, max_degree), build_shift(space, 1, max_degree)


def verify_bidisk_identity(n: int, max_degree: int) -> IdentityReport:
    """
    Check

        I + sum_{j=1..N} S^j W^{N-j+1} W*^{N-j+1} S*^j
          - sum_{j=0..N} S^j W^{N-j} W*^{N-j} S*^j  =  Proj[z^a w^b : a+b <= N-1]

    on the Hardy space of the bidisk.

    Raises:
        TruncationError: If max_degree < N + 2
    """
    _check_truncation(n, max_degree)
    s, w = _bidisk_shifts(IDENTITY_SPACES[BIDISK], max_degree)
    combination: Combination = [(Fraction(1), [])]
    for j in range(1, n + 1):
        combination.append((Fraction(1), _gram_word(power(s, j) + power(w, n - j + 1))))
    for j in range(n + 1):
        combination.append((Fraction(-1), _gram_word(power(s, j) + power(w, n - j))))

    exact_zero, defects, min_diagonal, diagonal = _run_identity(
        BIDISK, n, s, combination, _projection_below(n)
    )
    logger.debug(f"Bidisk identity N={n}, D={max_degree}: exact_zero={exact_zero}")
    return IdentityReport(
        identity=BIDISK,
        n=n,
        max_degree=max_degree,
        exact_zero=exact_zero,
        defect_entries=defects,
        min_diagonal=min_diagonal,
        diagonal=diagonal,
    )


def binomial_sum(s: OperatorModel, w: OperatorModel, order: int, scale: int = 1) -> Combination:
    """scale * sum_j binom(order, j) S^{order-j} W^j W*^j S*^{order-j}"""
    return [
        (Fraction(scale * comb(order, j)), _gram_word(power(s, order - j) + power(w, j)))
        for j in range(order + 1)
    ]


def falling_factorial_ratio(degree: int, order: int) -> Fraction:
    """(m)_n / (m+1)_n: the diagonal of the order-n binomial sum on degree-m monomials"""
    if degree < order:
        return Fraction(0)
    return Fraction(degree - order + 1, degree + 1)


def _closed_form_agrees(s: OperatorModel, w: OperatorModel, orders: Sequence[int], limit: int) -> bool:
    for order in orders:
        combination = binomial_sum(s, w, order)
        for index, exponent in enumerate(s.basis):
            if sum(exponent) > limit:
                continue
            result = _evaluate(combination, {index: Fraction(1)})
            expected = falling_factorial_ratio(sum(exponent), order)
            if result != ({index: expected} if expected else {}):
                logger.warning(
                    f"Binomial sum of order {order} disagrees with its closed form at {exponent}"
                )
                return False
    return True


def _displayed_ball_identity(s: OperatorModel, w: OperatorModel, limit: int) -> bool:
    """I + S^2 S*^2 + 2 S W W* S* + W^2 W*^2 = 2 S S* + 2 W W* + 1 (x) 1"""
    left: Combination = [
        (Fraction(1), []),
        (Fraction(1), _gram_word([s, s])),
        (Fraction(2), _gram_word([s, w])),
        (Fraction(1), _gram_word([w, w])),
    ]
    right: Combination = [
        (Fraction(2), _gram_word([s])),
        (Fraction(2), _gram_word([w])),
    ]
    constant = s.basis_index[(0, 0)]
    for index, exponent in enumerate(s.basis):
        if sum(exponent) > limit:
            continue
        vector = {index: Fraction(1)}
        lhs = _evaluate(left, vector)
        rhs = _evaluate(right, vector)
        if index == constant:
            # 1 (x) 1 x = <x, 1> 1 and ||1|| = 1
            rhs[constant] = rhs.get(constant, Fraction(0)) + s.weights[constant]
        if lhs != {k: v for k, v in rhs.items() if v}:
            return False
    return True


def verify_ball_identity(n: int, max_degree: int) -> IdentityReport:
    """
    Check the ball inequality

        I + N sum_j binom(N+1, j) S^{N+1-j} W^j W*^j S*^{N+1-j}
          >= (N+1) sum_j binom(N, j) S^{N-j} W^j W*^j S*^{N-j}

    on the Hardy space of the unit ball in C^2, together with the stronger
    claim that the difference is the projection P_N onto degrees <= N-1.
    For N = 1 the displayed identity is also checked term by term.

    Raises:
        TruncationError: If max_degree < N + 2
    """
    _check_truncation(n, max_degree)
    s, w = _bidisk_shifts(IDENTITY_SPACES[BALL], max_degree)
    combination: Combination = [(Fraction(1), [])]
    combination += binomial_sum(s, w, n + 1, scale=n)
    combination += [(-coeff, word) for coeff, word in binomial_sum(s, w, n, scale=n + 1)]

    limit = max_degree - n - 1
    exact_zero, defects, min_diagonal, diagonal = _run_identity(
        BALL, n, s, combination, _projection_below(n)
    )
    closed_form = _closed_form_agrees(s, w, (n, n + 1), limit)
    displayed = _displayed_ball_identity(s, w, limit) if n == 1 else None

    if min_diagonal < 0:
        logger.warning(f"Ball inequality fails for N={n}: min diagonal {min_diagonal}")
    logger.debug(
        f"Ball identity N={n}, D={max_degree}: equals_projection={exact_zero}, "
        f"min_diagonal={min_diagonal}"
    )
    return IdentityReport(
        identity=BALL,
        n=n,
        max_degree=max_degree,
        exact_zero=exact_zero,
        defect_entries=defects,
        min_diagonal=min_diagonal,
        diagonal=diagonal,
        displayed_identity=displayed,
        closed_form_agrees=closed_form,
    )


VERIFIERS: Dict[str, Callable[[int, int], IdentityReport]] = {
    BERGMAN: verify_bergman_identity,
    BIDISK: verify_bidisk_identity,
    BALL: verify_ball_identity,
}


def verify_identity(identity: str, n: int, max_degree: int) -> IdentityReport:
    """
    Dispatch to the verifier for one space.

    Raises:
        SpecificationError: If the identity name is unknown
        TruncationError: If max_degree < N + 2
    """
    verifier = VERIFIERS.get(identity)
    if verifier is None:
        raise SpecificationError(
            f"Unknown identity '{identity}'. Available: {', '.join(sorted(VERIFIERS))}"
        )
    return verifier(n, max_degree)


def _verify_task(task: Tuple[str, int, int]) -> IdentityReport:
    return verify_identity(*task)


def verify_identities(
    tasks: Sequence[Tuple[str, int, int]], workers: int = 1
) -> List[IdentityReport]:
    """
    Run several (identity, N, D) checks, in task order.

    With workers > 1 the checks run in a process pool; the result order
    does not depend on scheduling.
    """
    if workers <= 1 or len(tasks) <= 1:
        return [_verify_task(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_verify_task, tasks))
