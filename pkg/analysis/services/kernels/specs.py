"""
Kernel specifications.

Kernels are described symbolically, never as function handles: a builtin
closed form, a truncated diagonal power series k(z,w) = sum a_n <z,w>^n, or
the tensor product of two kernels. Keeping the description symbolic lets
every closed form evaluate exactly at rational points.
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union
import logging

from ..exceptions import (
    ConvergenceError,
    KernelDomainError,
    SpecificationError,
    UnsupportedVariantError,
)

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, float, complex]
Point = Tuple[Scalar, ...]

DIAGONAL = "diagonal"
PRODUCT = "product"

# Points closer than this to the boundary are rejected
DEFAULT_POINT_MARGIN = 1e-12


def conj(value: Scalar) -> Scalar:
    """Complex conjugate that keeps real rationals as Fractions"""
    if isinstance(value, complex):
        return value.conjugate()
    return value


def abs_squared(value: Scalar) -> Scalar:
    if isinstance(value, complex):
        return value.real * value.real + value.imag * value.imag
    return value * value


def inner(z: Point, w: Point) -> Scalar:
    """<z, w> = sum z_i conj(w_i)"""
    total: Scalar = Fraction(0)
    for z_i, w_i in zip(z, w):
        total = total + z_i * conj(w_i)
    return total


def _reciprocal(value: Scalar) -> Scalar:
    if isinstance(value, Fraction):
        return Fraction(1) / value
    return 1 / value


def _exp(value: Scalar) -> Scalar:
    if isinstance(value, complex):
        return cmath.exp(value)
    return math.exp(value)


def _factorial_reciprocal(n: int) -> Fraction:
    return Fraction(1, math.factorial(n))


@dataclass(frozen=True)
class BuiltinKernel:
    """A closed-form kernel (immutable)"""

    name: str
    dimension: int
    domain: str  # disk, polydisk, ball or plane
    closed_form: Callable[[Point, Point], Scalar]
    # Diagonal coefficient a_n in k = sum a_n <z,w>^n, None when k is not of that form
    coefficient: Optional[Callable[[int], Fraction]] = None
    description: str = ""


def _szego(z: Point, w: Point) -> Scalar:
    return _reciprocal(1 - inner(z, w))


def _bergman(z: Point, w: Point) -> Scalar:
    return _reciprocal((1 - inner(z, w)) ** 2)


def _hardy_bidisk(z: Point, w: Point) -> Scalar:
    return _reciprocal((1 - z[0] * conj(w[0])) * (1 - z[1] * conj(w[1])))


def _fock(z: Point, w: Point) -> Scalar:
    return _exp(inner(z, w))


def _sandwich(z: Point, w: Point) -> Scalar:
    x = inner(z, w)
    return 1 + 2 * x * _reciprocal(1 - x)


BUILTIN_KERNELS: Dict[str, BuiltinKernel] = {
    "szego_disk": BuiltinKernel(
        name="szego_disk",
        dimension=1,
        domain="disk",
        closed_form=_szego,
        coefficient=lambda n: Fraction(1),
        description="Hardy space of the disk, 1/(1 - z conj(w))",
    ),
    "bergman_disk": BuiltinKernel(
        name="bergman_disk",
        dimension=1,
        domain="disk",
        closed_form=_bergman,
        coefficient=lambda n: Fraction(n + 1),
        description="Bergman space of the disk, 1/(1 - z conj(w))^2",
    ),
    "hardy_bidisk": BuiltinKernel(
        name="hardy_bidisk",
        dimension=2,
        domain="polydisk",
        closed_form=_hardy_bidisk,
        description="Hardy space of the bidisk, product of two Szego kernels",
    ),
    "hardy_ball2": BuiltinKernel(
        name="hardy_ball2",
        dimension=2,
        domain="ball",
        closed_form=_bergman,
        coefficient=lambda n: Fraction(n + 1),
        description="Hardy space of the two-dimensional ball, (1 - <z,w>)^-2",
    ),
    "fock_plane": BuiltinKernel(
        name="fock_plane",
        dimension=1,
        domain="plane",
        closed_form=_fock,
        coefficient=_factorial_reciprocal,
        description="Fock space of the plane, exp(z conj(w))",
    ),
    "sandwich_disk": BuiltinKernel(
        name="sandwich_disk",
        dimension=1,
        domain="disk",
        closed_form=_sandwich,
        coefficient=lambda n: Fraction(1) if n == 0 else Fraction(2),
        description="1 + 2 z conj(w)/(1 - z conj(w)), between s and 2s",
    ),
}


def list_builtin_kernels() -> List[str]:
    """Get list of all builtin kernel names"""
    return list(BUILTIN_KERNELS.keys())


@dataclass(frozen=True)
class KernelSpec:
    """
    Symbolic description of a reproducing kernel.

    Use the ``builtin``, ``diagonal`` and ``product`` constructors rather than
    filling fields by hand; ``__post_init__`` enforces the invariants either way.
    """

    variant: str
    dimension: int
    coeffs: Tuple[Fraction, ...] = ()
    domain_radius: Optional[float] = None
    left: Optional["KernelSpec"] = None
    right: Optional["KernelSpec"] = None
    _builtin: Optional[BuiltinKernel] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.variant == DIAGONAL:
            self._validate_diagonal()
        elif self.variant == PRODUCT:
            self._validate_product()
        elif self.variant in BUILTIN_KERNELS:
            builtin = BUILTIN_KERNELS[self.variant]
            if self.dimension != builtin.dimension:
                raise SpecificationError(
                    f"Builtin '{self.variant}' has dimension {builtin.dimension}, "
                    f"got {self.dimension}"
                )
            object.__setattr__(self, "_builtin", builtin)
        else:
            raise SpecificationError(
                f"Unknown kernel variant '{self.variant}'. "
                f"Available: {list_builtin_kernels() + [DIAGONAL, PRODUCT]}"
            )

    def _validate_diagonal(self):
        if self.dimension < 1:
            raise SpecificationError("Kernel dimension must be a positive integer")
        if not self.coeffs:
            raise SpecificationError("Diagonal kernel needs at least a_0")
        if self.coeffs[0] <= 0:
            raise SpecificationError(f"Diagonal kernel needs a_0 > 0, got {self.coeffs[0]}")
        negative = [n for n, a in enumerate(self.coeffs) if a < 0]
        if negative:
            raise SpecificationError(
                f"Diagonal coefficients must be nonnegative; negative at n={negative}"
            )
        if self.domain_radius is None or not self.domain_radius > 0:
            raise SpecificationError("Diagonal kernel needs a positive domain_radius")

    def _validate_product(self):
        if self.left is None or self.right is None:
            raise SpecificationError("Product kernel needs both left and right factors")
        expected = self.left.dimension + self.right.dimension
        if self.dimension != expected:
            raise SpecificationError(
                f"Product dimension must be {expected}, got {self.dimension}"
            )

    @classmethod
    def builtin(cls, name: str) -> "KernelSpec":
        if name not in BUILTIN_KERNELS:
            raise SpecificationError(
                f"Unknown builtin kernel '{name}'. Available: {list_builtin_kernels()}"
            )
        return cls(variant=name, dimension=BUILTIN_KERNELS[name].dimension)

    @classmethod
    def diagonal(
        cls,
        coeffs: Sequence[Union[int, str, Fraction]],
        domain_radius: float = 1.0,
        dimension: int = 1,
    ) -> "KernelSpec":
        try:
            exact = tuple(Fraction(a) for a in coeffs)
        except (TypeError, ValueError) as e:
            raise SpecificationError(f"Diagonal coefficients must be rational: {e}")
        return cls(
            variant=DIAGONAL,
            dimension=dimension,
            coeffs=exact,
            domain_radius=float(domain_radius),
        )

    @classmethod
    def product(cls, left: "KernelSpec", right: "KernelSpec") -> "KernelSpec":
        return cls(
            variant=PRODUCT,
            dimension=left.dimension + right.dimension,
            left=left,
            right=right,
        )

    @property
    def is_builtin(self) -> bool:
        return self._builtin is not None

    @property
    def domain(self) -> str:
        """Domain kind: disk, polydisk, ball, plane, series or product"""
        if self._builtin is not None:
            return self._builtin.domain
        return "series" if self.variant == DIAGONAL else PRODUCT

    @property
    def has_diagonal_series(self) -> bool:
        if self.variant == DIAGONAL:
            return True
        return self._builtin is not None and self._builtin.coefficient is not None

    def diagonal_coefficients(self, order: int) -> Tuple[Fraction, ...]:
        """
        Coefficients a_0..a_order of k = sum a_n <z,w>^n.

        Raises:
            UnsupportedVariantError: If the kernel is not a function of <z,w>
        """
        if order < 0:
            raise SpecificationError(f"Series order must be nonnegative, got {order}")
        if self.variant == DIAGONAL:
            padded = self.coeffs + (Fraction(0),) * (order + 1 - len(self.coeffs))
            return padded[: order + 1]
        if self._builtin is not None and self._builtin.coefficient is not None:
            return tuple(self._builtin.coefficient(n) for n in range(order + 1))
        raise UnsupportedVariantError(
            f"Kernel '{self.name}' has no diagonal series in <z,w>"
        )

    @property
    def name(self) -> str:
        if self.variant == PRODUCT:
            return f"product({self.left.name},{self.right.name})"
        return self.variant

    def check_point(self, point: Point, margin: float = DEFAULT_POINT_MARGIN):
        """
        Validate that point lies strictly inside the kernel's domain.

        Raises:
            KernelDomainError: If the point is outside (or on) the boundary
            ConvergenceError: If a diagonal series would be evaluated past its radius
        """
        if len(point) != self.dimension:
            raise KernelDomainError(
                f"Point has {len(point)} coordinates, kernel '{self.name}' "
                f"expects {self.dimension}"
            )
        if self.variant == PRODUCT:
            split = self.left.dimension
            self.left.check_point(point[:split], margin)
            self.right.check_point(point[split:], margin)
            return

        domain = self.domain
        if domain == "plane":
            return
        if domain in ("disk", "polydisk"):
            limit = (1 - margin) ** 2
            for coordinate in point:
                if abs_squared(coordinate) >= limit:
                    raise KernelDomainError(
                        f"Point {point} is outside the open {domain} of '{self.name}'"
                    )
            return

        norm_squared = sum(abs_squared(c) for c in point)
        if domain == "ball":
            if norm_squared >= (1 - margin) ** 2:
                raise KernelDomainError(
                    f"Point {point} is outside the open ball of '{self.name}'"
                )
            return

        # truncated diagonal series
        if norm_squared >= (self.domain_radius - margin) ** 2:
            raise ConvergenceError(
                f"Point {point} lies past the radius {self.domain_radius} of the "
                f"diagonal series"
            )

    def evaluate(self, z: Point, w: Point) -> Scalar:
        """k(z, w) for already-validated points"""
        if self.variant == PRODUCT:
            split = self.left.dimension
            return self.left.evaluate(z[:split], w[:split]) * self.right.evaluate(
                z[split:], w[split:]
            )
        if self._builtin is not None:
            try:
                return self._builtin.closed_form(z, w)
            except OverflowError:
                raise KernelDomainError(
                    f"{self._builtin.name}({z}, {w}) overflows floating point"
                )

        # Horner on the truncated series
        x = inner(z, w)
        total: Scalar = Fraction(0)
        for a in reversed(self.coeffs):
            total = total * x + a
        return total

    def to_dict(self) -> Dict[str, object]:
        if self.variant == PRODUCT:
            return {
                "variant": PRODUCT,
                "dimension": self.dimension,
                "left": self.left.to_dict(),
                "right": self.right.to_dict(),
            }
        if self.variant == DIAGONAL:
            return {
                "variant": DIAGONAL,
                "dimension": self.dimension,
                "coeffs": [str(a) for a in self.coeffs],
                "domain_radius": self.domain_radius,
            }
        return {"variant": self.variant, "dimension": self.dimension}

    def __str__(self):
        return self.name
