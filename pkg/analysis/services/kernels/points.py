"""
Finite point sets sampled from a kernel's domain.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from ..exceptions import SpecificationError
from .specs import DEFAULT_POINT_MARGIN, DIAGONAL, PRODUCT, KernelSpec, Point, Scalar

logger = logging.getLogger(__name__)

Coordinate = Union[int, Fraction, float, complex]


def normalize_coordinate(value: Coordinate) -> Scalar:
    """
    Coerce a coordinate into the arithmetic the kernels understand.

    Integers and Fractions stay exact, complex numbers with zero imaginary
    part keep their real type, everything else becomes a Python complex.
    """
    if isinstance(value, bool):
        raise SpecificationError("Boolean is not a valid coordinate")
    if isinstance(value, (int, np.integer, Fraction)):
        return Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if value.imag == 0:
            return value.real
        return value
    raise SpecificationError(f"Unsupported coordinate type {type(value).__name__}")


def as_point(value: Union[Coordinate, Sequence[Coordinate]]) -> Point:
    """Accept a scalar (one variable) or a sequence of coordinates"""
    if isinstance(value, (list, tuple, np.ndarray)):
        return tuple(normalize_coordinate(c) for c in value)
    return (normalize_coordinate(value),)


@dataclass(frozen=True)
class PointSet:
    """Nonempty, pairwise distinct points of a common dimension"""

    points: Tuple[Point, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if not self.points:
            raise SpecificationError("Point set must be nonempty")
        dimension = len(self.points[0])
        if any(len(p) != dimension for p in self.points):
            raise SpecificationError("All points must have the same dimension")
        if len(set(self.points)) != len(self.points):
            raise SpecificationError("Points must be pairwise distinct")
        if self.labels is not None and len(self.labels) != len(self.points):
            raise SpecificationError(
                f"Got {len(self.labels)} labels for {len(self.points)} points"
            )

    @classmethod
    def of(
        cls,
        values: Iterable[Union[Coordinate, Sequence[Coordinate]]],
        labels: Optional[Sequence[str]] = None,
    ) -> "PointSet":
        points = tuple(as_point(v) for v in values)
        return cls(points=points, labels=tuple(labels) if labels is not None else None)

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, index: int) -> Point:
        return self.points[index]

    def validate_for(self, spec: KernelSpec, margin: float = DEFAULT_POINT_MARGIN):
        """
        Check every point against the kernel's domain.

        Raises:
            KernelDomainError: If a point is outside the open domain
            ConvergenceError: If a point is past a diagonal series' radius
        """
        for point in self.points:
            spec.check_point(point, margin)

    def to_list(self) -> List[List[List[float]]]:
        """JSON-friendly [[re, im], ...] per point"""
        return [[[float(complex(c).real), float(complex(c).imag)] for c in p] for p in self.points]


def _sample_disk(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    modulus = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    angle = rng.uniform(0.0, 2 * math.pi, count)
    return modulus * np.exp(1j * angle)


def _sample_ball(
    rng: np.random.Generator, count: int, dimension: int, radius: float
) -> np.ndarray:
    direction = rng.standard_normal((count, dimension)) + 1j * rng.standard_normal(
        (count, dimension)
    )
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    modulus = radius * rng.uniform(0.0, 1.0, count) ** (1.0 / (2 * dimension))
    return direction * modulus[:, None]


def _sample_coordinates(
    spec: KernelSpec, rng: np.random.Generator, count: int, radius: float
) -> np.ndarray:
    if spec.variant == PRODUCT:
        return np.hstack(
            [
                _sample_coordinates(spec.left, rng, count, radius),
                _sample_coordinates(spec.right, rng, count, radius),
            ]
        )
    domain = spec.domain
    if domain in ("disk", "polydisk", "plane"):
        return np.column_stack(
            [_sample_disk(rng, count, radius) for _ in range(spec.dimension)]
        )
    if domain == "ball":
        return _sample_ball(rng, count, spec.dimension, radius)
    if spec.variant == DIAGONAL:
        return _sample_ball(rng, count, spec.dimension, radius * spec.domain_radius)
    raise SpecificationError(f"Cannot sample points for domain '{domain}'")


def sample_points(
    spec: KernelSpec, count: int, seed: int, radius: float = 0.9
) -> PointSet:
    """
    Draw a reproducible random point set strictly inside the kernel's domain.

    Args:
        spec: Kernel whose domain is sampled
        count: Number of points
        seed: Seed for numpy's default generator
        radius: Fraction of the domain used (plane kernels use it as the radius)

    Returns:
        PointSet of complex points
    """
    if count < 1:
        raise SpecificationError(f"Need at least one point, got {count}")
    if not 0 < radius < 1 and spec.domain != "plane":
        raise SpecificationError(f"Sampling radius must lie in (0, 1), got {radius}")

    rng = np.random.default_rng(seed)
    coordinates = _sample_coordinates(spec, rng, count, radius)
    point_set = PointSet.of([tuple(complex(c) for c in row) for row in coordinates])
    point_set.validate_for(spec)
    logger.debug(f"Sampled {count} points for {spec.name} with seed={seed}")
    return point_set
