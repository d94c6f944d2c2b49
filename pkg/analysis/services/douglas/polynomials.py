"""
Sparse multivariate polynomials and matrices of them.

A polynomial maps exponent tuples to coefficients. Rational coefficients
are kept as Fractions so polynomial identities are checked exactly;
complex coefficients are allowed for multipliers that need them.

  x0^2 * x1 + 3  ->  {(2, 1): Fraction(1), (0, 0): Fraction(3)}

The zero polynomial has no terms.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from ..exceptions import ShapeMismatchError, SpecificationError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Coefficient = Union[Fraction, complex]


def _coerce(value) -> Coefficient:
    if isinstance(value, bool):
        raise SpecificationError("Boolean is not a valid coefficient")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, complex):
        return Fraction(value.real) if value.imag == 0 else value
    raise SpecificationError(f"Unsupported coefficient type {type(value).__name__}")


@dataclass(frozen=True)
class Polynomial:
    """Immutable sparse polynomial in a fixed number of variables"""

    variable_count: int
    terms: Tuple[Tuple[Exponent, Coefficient], ...] = ()

    def __post_init__(self):
        if self.variable_count < 1:
            raise SpecificationError("A polynomial needs at least one variable")
        merged: Dict[Exponent, Coefficient] = {}
        for exponent, coeff in self.terms:
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != self.variable_count or any(e < 0 for e in exponent):
                raise SpecificationError(
                    f"Exponent {exponent} is invalid for {self.variable_count} variables"
                )
            merged[exponent] = merged.get(exponent, Fraction(0)) + _coerce(coeff)
        canonical = tuple(sorted((e, _coerce(c)) for e, c in merged.items() if c != 0))
        object.__setattr__(self, "terms", canonical)

    @classmethod
    def from_dict(cls, variable_count: int, terms: Mapping[Exponent, object]) -> "Polynomial":
        return cls(variable_count, tuple(terms.items()))

    @classmethod
    def constant(cls, variable_count: int, value=1) -> "Polynomial":
        return cls(variable_count, (((0,) * variable_count, value),))

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exponent), ((tuple(exponent), coeff),))

    @classmethod
    def zero(cls, variable_count: int) -> "Polynomial":
        return cls(variable_count)

    def as_dict(self) -> Dict[Exponent, Coefficient]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for _, c in self.terms)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1"""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def coefficient(self, exponent: Sequence[int]) -> Coefficient:
        return self.as_dict().get(tuple(exponent), Fraction(0))

    def _check_compatible(self, other: "Polynomial"):
        if other.variable_count != self.variable_count:
            raise ShapeMismatchError(
                f"Polynomials in {self.variable_count} and {other.variable_count} "
                f"variables cannot be combined"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        return Polynomial(self.variable_count, self.terms + other.terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variable_count, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        products = []
        for exp_a, coeff_a in self.terms:
            for exp_b, coeff_b in other.terms:
                # Multiply monomials by adding exponents component-wise
                products.append(
                    (tuple(a + b for a, b in zip(exp_a, exp_b)), coeff_a * coeff_b)
                )
        return Polynomial(self.variable_count, tuple(products))

    def l2_norm_squared(self) -> Union[Fraction, float]:
        """Sum of |coefficient|^2, the squared L2 norm on the torus"""
        total: Union[Fraction, float] = Fraction(0)
        for _, coeff in self.terms:
            if isinstance(coeff, complex):
                total = total + abs(coeff) ** 2
            else:
                total = total + coeff * coeff
        return total

    def evaluate(self, point: Sequence) -> Coefficient:
        """Value at a point; exact when both coefficients and coordinates are rational"""
        if len(point) != self.variable_count:
            raise ShapeMismatchError(
                f"Point has {len(point)} coordinates, polynomial expects "
                f"{self.variable_count}"
            )
        exact = self.is_exact and all(isinstance(c, (int, Fraction)) for c in point)
        if exact:
            point = [Fraction(c) for c in point]
        else:
            point = [complex(c) for c in point]
        total = Fraction(0) if exact else 0j
        for exponent, coeff in self.terms:
            term = coeff if exact else complex(coeff)
            for coordinate, power in zip(point, exponent):
                if power:
                    term = term * coordinate**power
            total = total + term
        return total

    def evaluate_grid(self, coordinates: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorized evaluation over broadcastable coordinate arrays"""
        shape = np.broadcast(*coordinates).shape
        total = np.zeros(shape, dtype=complex)
        for exponent, coeff in self.terms:
            term = np.full(shape, complex(coeff))
            for coordinate, power in zip(coordinates, exponent):
                if power:
                    term = term * coordinate**power
            total = total + term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exponent, coeff in self.terms:
            factors = [
                f"x{i}" if p == 1 else f"x{i}^{p}" for i, p in enumerate(exponent) if p
            ]
            monomial = "*".join(factors)
            if not monomial:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(monomial)
            else:
                parts.append(f"{coeff}*{monomial}")
        return " + ".join(parts)


@dataclass(frozen=True)
class PolynomialMatrix:
    """Matrix of polynomials sharing one variable count"""

    entries: Tuple[Tuple[Polynomial, ...], ...]
    variable_count: int
    degree_bound: Optional[int] = None

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise SpecificationError("Polynomial matrix must be nonempty")
        cols = len(self.entries[0])
        if any(len(row) != cols for row in self.entries):
            raise ShapeMismatchError("Polynomial matrix rows have different lengths")
        for row in self.entries:
            for entry in row:
                if entry.variable_count != self.variable_count:
                    raise ShapeMismatchError(
                        f"Entry in {entry.variable_count} variables inside a matrix "
                        f"over {self.variable_count}"
                    )
                if self.degree_bound is not None and entry.degree > self.degree_bound:
                    raise SpecificationError(
                        f"Entry of degree {entry.degree} exceeds the bound "
                        f"{self.degree_bound}"
                    )

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[Iterable[Polynomial]],
        variable_count: int,
        degree_bound: Optional[int] = None,
    ) -> "PolynomialMatrix":
        return cls(tuple(tuple(row) for row in rows), variable_count, degree_bound)

    @classmethod
    def zeros(cls, rows: int, cols: int, variable_count: int) -> "PolynomialMatrix":
        zero = Polynomial.zero(variable_count)
        return cls(tuple((zero,) * cols for _ in range(rows)), variable_count)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def degree(self) -> int:
        return max(entry.degree for row in self.entries for entry in row)

    def __getitem__(self, index: Tuple[int, int]) -> Polynomial:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> "PolynomialMatrix":
        return PolynomialMatrix((self.entries[i],), self.variable_count)

    def __matmul__(self, other: "PolynomialMatrix") -> "PolynomialMatrix":
        if self.cols != other.rows or self.variable_count != other.variable_count:
            raise ShapeMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = Polynomial.zero(self.variable_count)
        product = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                total = zero
                for k in range(self.cols):
                    total = total + self.entries[i][k] * other.entries[k][j]
                row.append(total)
            product.append(tuple(row))
        return PolynomialMatrix(tuple(product), self.variable_count)

    def __sub__(self, other: "PolynomialMatrix") -> "PolynomialMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatchError("Polynomial matrices have different shapes")
        return PolynomialMatrix(
            tuple(
                tuple(a - b for a, b in zip(row_a, row_b))
                for row_a, row_b in zip(self.entries, other.entries)
            ),
            self.variable_count,
        )

    @property
    def is_zero(self) -> bool:
        return all(entry.is_zero for row in self.entries for entry in row)

    def evaluate(self, point: Sequence[complex]) -> np.ndarray:
        return np.array(
            [[entry.evaluate(point) for entry in row] for row in self.entries],
            dtype=complex,
        )

    def evaluate_grid(self, coordinates: Sequence[np.ndarray]) -> np.ndarray:
        """Values on a grid, shaped grid_shape + (rows, cols)"""
        values = [
            [entry.evaluate_grid(coordinates) for entry in row] for row in self.entries
        ]
        return np.moveaxis(np.array(values, dtype=complex), (0, 1), (-2, -1))

    def to_list(self):
        """JSON-friendly [[[exponent, coefficient], ...] per entry]"""
        return [
            [[[list(e), _coefficient_json(c)] for e, c in entry.terms] for entry in row]
            for row in self.entries
        ]


def _coefficient_json(coeff: Coefficient):
    if isinstance(coeff, Fraction):
        return str(coeff)
    return [coeff.real, coeff.imag]
