"""
Exact linear algebra over the rationals on sparse rows.

Rows are dicts {column: Fraction}. Pivot rows are kept fully reduced: each
holds a 1 in its own pivot column and no other pivot column, so clearing a
pivot from an incoming row never brings another one back.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple
import logging

logger = logging.getLogger(__name__)

SparseRow = Dict[int, Fraction]


@dataclass(frozen=True)
class ReducedSystem:
    """Reduced row echelon form of a homogeneous system"""

    columns: int
    pivots: Tuple[Tuple[int, Tuple[Tuple[int, Fraction], ...]], ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def pivot_columns(self) -> Tuple[int, ...]:
        return tuple(column for column, _ in self.pivots)

    @property
    def free_columns(self) -> Tuple[int, ...]:
        taken = set(self.pivot_columns)
        return tuple(c for c in range(self.columns) if c not in taken)

    def null_space(self) -> List[SparseRow]:
        """One basis vector per free column, with a 1 in that column"""
        basis = []
        for free in self.free_columns:
            vector: SparseRow = {free: Fraction(1)}
            for column, row in self.pivots:
                value = dict(row).get(free)
                if value:
                    vector[column] = -value
            basis.append(vector)
        return basis


def _eliminate(row: SparseRow, pivots: Mapping[int, SparseRow]) -> SparseRow:
    while row:
        candidates = [c for c in row if c in pivots]
        if not candidates:
            break
        column = min(candidates)
        factor = row[column]
        for c, v in pivots[column].items():
            updated = row.get(c, Fraction(0)) - factor * v
            if updated:
                row[c] = updated
            else:
                row.pop(c, None)
    return row


def reduce_rows(rows: Iterable[Mapping[int, object]], columns: int) -> ReducedSystem:
    """
    Reduced row echelon form of the rows (exact).

    Args:
        rows: Sparse rows; values are coerced to Fraction
        columns: Number of unknowns

    Returns:
        ReducedSystem whose pivot rows hold only their pivot and free columns
    """
    pivots: Dict[int, SparseRow] = {}
    for raw in rows:
        row = {int(c): Fraction(v) for c, v in raw.items() if v != 0}
        row = _eliminate(row, pivots)
        if not row:
            continue
        column = min(row)
        scale = row[column]
        pivot_row = {c: v / scale for c, v in row.items()}
        # Keep existing pivot rows free of the new pivot column
        for other in pivots.values():
            factor = other.get(column)
            if factor:
                for c, v in pivot_row.items():
                    updated = other.get(c, Fraction(0)) - factor * v
                    if updated:
                        other[c] = updated
                    else:
                        other.pop(c, None)
        pivots[column] = pivot_row

    logger.debug(f"Reduced system: {len(pivots)} pivots over {columns} columns")
    return ReducedSystem(
        columns=columns,
        pivots=tuple(
            (column, tuple(sorted(pivots[column].items()))) for column in sorted(pivots)
        ),
    )


def apply_rows(rows: Iterable[Mapping[int, object]], vector: Mapping[int, Fraction]) -> List[Fraction]:
    """Exact product of sparse rows with a sparse vector"""
    return [
        sum((Fraction(v) * vector.get(c, Fraction(0)) for c, v in row.items()), Fraction(0))
        for row in rows
    ]
