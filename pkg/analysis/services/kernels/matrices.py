"""
Hermitian matrices shared by the kernel, Pick and factorization services.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union
import logging

import numpy as np

from ..exceptions import MatrixValidationError

logger = logging.getLogger(__name__)

# Largest |m - m^*| entry tolerated before a matrix is rejected as non-Hermitian
HERMITIAN_TOLERANCE = 1e-12

ExactEntries = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """
    Complex conjugate-symmetric matrix.

    ``exact`` keeps the rational entries when the matrix was computed in
    exact arithmetic (real rational points on a rational kernel).
    """

    entries: np.ndarray
    exact: Optional[ExactEntries] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.size == 0:
            raise MatrixValidationError(
                f"Hermitian matrix must be square and nonempty, got shape {entries.shape}"
            )
        asymmetry = float(np.max(np.abs(entries - entries.conj().T)))
        scale = max(1.0, float(np.max(np.abs(entries))))
        if asymmetry > HERMITIAN_TOLERANCE * scale:
            raise MatrixValidationError(
                f"Matrix is not Hermitian (max asymmetry {asymmetry:.3e})"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[complex, float, Fraction]]]):
        """Build from nested rows, keeping exact entries when all are rational"""
        exact = None
        if all(isinstance(v, (int, Fraction)) for row in rows for v in row):
            exact = tuple(tuple(Fraction(v) for v in row) for row in rows)
        entries = np.array([[complex(v) for v in row] for row in rows], dtype=complex)
        return cls(entries=entries, exact=exact)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = tuple(
                tuple(a - b for a, b in zip(row_a, row_b))
                for row_a, row_b in zip(self.exact, other.exact)
            )
        return HermitianMatrix(entries=self.entries - other.entries, exact=exact)

    def scaled(self, factor: Union[int, Fraction]) -> "HermitianMatrix":
        exact = None
        if self.exact is not None and isinstance(factor, (int, Fraction)):
            exact = tuple(tuple(v * factor for v in row) for row in self.exact)
        return HermitianMatrix(entries=self.entries * complex(factor), exact=exact)

    def to_list(self):
        """JSON-friendly nested [re, im] pairs"""
        return [[[float(v.real), float(v.imag)] for v in row] for row in self.entries]

    def __repr__(self):
        return f"<HermitianMatrix(size={self.size})>"


def hermitian_from_upper(values) -> HermitianMatrix:
    """
    Assemble a Hermitian matrix from its upper triangle.

    values[i][j] is read for j >= i only; the lower triangle is the exact
    conjugate mirror, so the result is conjugate-symmetric as computed.
    """
    size = len(values)
    rows = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            value = values[i][j]
            rows[i][j] = value
            rows[j][i] = value.conjugate() if isinstance(value, complex) else value
        diagonal = rows[i][i]
        if isinstance(diagonal, complex):
            rows[i][i] = diagonal.real
    return HermitianMatrix.from_rows(rows)
