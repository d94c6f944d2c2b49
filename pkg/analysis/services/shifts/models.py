"""
Truncated models of multiplication operators on a monomial basis.

The basis is the (unnormalized) monomials of total degree <= D. Keeping the
basis unnormalized keeps every matrix entry rational; inner products use the
space's weights:

    <x, y> = sum_m x_m conj(y_m) ||z^m||^2

and the adjoint of M is M*[i][j] = conj(M[j][i]) w_j / w_i.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union
import logging

from ..exceptions import SpecificationError, TruncationError
from .spaces import Exponent, MonomialSpace, get_space

logger = logging.getLogger(__name__)

SparseVector = Dict[int, Fraction]
SparseColumn = Tuple[Tuple[int, Fraction], ...]


@dataclass(frozen=True, eq=False)
class OperatorModel:
    """
    Sparse exact matrix of an operator on the truncated monomial basis.

    ``columns[c]`` lists the nonzero (row, value) entries of column c, so
    applying the operator to a basis vector is a lookup. ``exact_rows`` are
    the basis indices on which truncation does not change the action.
    """

    space: MonomialSpace
    max_degree: int
    basis: Tuple[Exponent, ...]
    columns: Tuple[SparseColumn, ...]
    weights: Tuple[Fraction, ...]
    exact_rows: FrozenSet[int]
    label: str = ""

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def basis_index(self) -> Dict[Exponent, int]:
        return {exponent: i for i, exponent in enumerate(self.basis)}

    def entry(self, row: int, col: int) -> Fraction:
        return dict(self.columns[col]).get(row, Fraction(0))

    def matrix(self) -> List[List[Fraction]]:
        """Dense exact matrix (for reports and small checks)"""
        dense = [[Fraction(0)] * self.size for _ in range(self.size)]
        for col, column in enumerate(self.columns):
            for row, value in column:
                dense[row][col] = value
        return dense

    def apply(self, vector: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}
        for col, coeff in vector.items():
            for row, value in self.columns[col]:
                updated = result.get(row, Fraction(0)) + coeff * value
                if updated:
                    result[row] = updated
                else:
                    result.pop(row, None)
        return result

    def adjoint(self) -> "OperatorModel":
        """Weighted adjoint; entries stay rational"""
        adjoint_columns: List[List[Tuple[int, Fraction]]] = [[] for _ in range(self.size)]
        for col, column in enumerate(self.columns):
            for row, value in column:
                # M[row][col] = value  ->  M*[col][row] = conj(value) w_row / w_col
                adjoint_columns[row].append((col, value * self.weights[row] / self.weights[col]))
        return OperatorModel(
            space=self.space,
            max_degree=self.max_degree,
            basis=self.basis,
            columns=tuple(tuple(sorted(column)) for column in adjoint_columns),
            weights=self.weights,
            exact_rows=frozenset(range(self.size)),
            label=f"{self.label}*",
        )

    def inner(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Fraction:
        """Weighted inner product of two real-rational coefficient vectors"""
        return sum(
            (value * y[i] * self.weights[i] for i, value in x.items() if i in y),
            Fraction(0),
        )

    def basis_vector(self, exponent: Sequence[int]) -> SparseVector:
        index = self.basis_index.get(tuple(exponent))
        if index is None:
            raise TruncationError(
                f"Monomial {tuple(exponent)} is outside the degree-{self.max_degree} model"
            )
        return {index: Fraction(1)}

    def __repr__(self):
        return f"<OperatorModel({self.label}, space={self.space.space_name}, D={self.max_degree})>"


def build_shift(
    space: Union[str, MonomialSpace], variable: int, max_degree: int
) -> OperatorModel:
    """
    Multiplication by one coordinate on monomials of degree <= max_degree.

    Monomials of degree max_degree are sent outside the model, so only
    rows of degree <= max_degree - 1 are exact.

    Args:
        space: Space name or instance
        variable: Coordinate index (0 for z, 1 for w)
        max_degree: Truncation degree D >= 1

    Raises:
        SpecificationError: If D < 1 or the variable does not exist
    """
    if isinstance(space, str):
        space = get_space(space)
    if max_degree < 1:
        raise SpecificationError(f"Truncation degree must be >= 1, got {max_degree}")
    if not 0 <= variable < space.variable_count:
        raise SpecificationError(
            f"Variable {variable} does not exist on {space.space_name}"
        )

    basis = tuple(space.monomials(max_degree))
    index = {exponent: i for i, exponent in enumerate(basis)}
    columns = []
    for exponent in basis:
        shifted = tuple(e + (1 if k == variable else 0) for k, e in enumerate(exponent))
        target = index.get(shifted)
        columns.append(() if target is None else ((target, Fraction(1)),))

    exact_rows = frozenset(i for i, exponent in enumerate(basis) if sum(exponent) <= max_degree - 1)
    label = "zw"[variable] if space.variable_count == 2 else "z"
    logger.debug(f"Built shift {label} on {space.space_name} with {len(basis)} monomials")
    return OperatorModel(
        space=space,
        max_degree=max_degree,
        basis=basis,
        columns=tuple(columns),
        weights=tuple(space.weight(exponent) for exponent in basis),
        exact_rows=exact_rows,
        label=label,
    )


def apply_word(word: Sequence[OperatorModel], vector: Mapping[int, Fraction]) -> SparseVector:
    """Apply a product of operators; the rightmost factor acts first"""
    result = dict(vector)
    for operator in reversed(word):
        result = operator.apply(result)
        if not result:
            break
    return result


def power(operator: OperatorModel, exponent: int) -> List[OperatorModel]:
    """The word operator^exponent"""
    return [operator] * exponent


def adjoint_defect(
    model: OperatorModel, pairs: Iterable[Tuple[int, int]]
) -> List[Tuple[int, int, Fraction]]:
    """
    <M u, v> - <u, M* v> on basis pairs where u is an exact row.

    Returns the nonzero differences; an empty list confirms consistency.
    """
    adjoint = model.adjoint()
    defects = []
    for u, v in pairs:
        if u not in model.exact_rows:
            continue
        e_u, e_v = {u: Fraction(1)}, {v: Fraction(1)}
        difference = model.inner(model.apply(e_u), e_v) - model.inner(e_u, adjoint.apply(e_v))
        if difference:
            defects.append((u, v, difference))
    return defects
