"""
Function spaces with orthogonal monomial bases.

Each space is described by the squared norms of its monomials; nothing else
is needed to build multiplication operators and their adjoints exactly.
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from math import factorial
from typing import Dict, List, Tuple, Type
import logging

from ..exceptions import SpecificationError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


class MonomialSpace(ABC):
    """Abstract base class for spaces where the monomials are orthogonal"""

    @property
    @abstractmethod
    def space_name(self) -> str:
        """Return the space identifier (e.g., 'bergman_disk')"""
        pass

    @property
    @abstractmethod
    def variable_count(self) -> int:
        pass

    @abstractmethod
    def weight(self, exponent: Exponent) -> Fraction:
        """
        Squared norm of the monomial with this exponent.

        Returns:
            A positive rational
        """
        pass

    def monomials(self, max_degree: int) -> List[Exponent]:
        """
        Exponents of total degree <= max_degree.

        Ordered by total degree, then by decreasing power of the first variable.
        """
        if self.variable_count == 1:
            return [(d,) for d in range(max_degree + 1)]
        return [(d - b, b) for d in range(max_degree + 1) for b in range(d + 1)]

    def _check_exponent(self, exponent: Exponent):
        if len(exponent) != self.variable_count or any(e < 0 for e in exponent):
            raise SpecificationError(
                f"Exponent {exponent} is invalid on {self.space_name}"
            )

    def __repr__(self):
        return f"<{self.__class__.__name__}>"


class BergmanDisk(MonomialSpace):
    """A^2 of the disk: ||z^j||^2 = 1/(j+1)"""

    @property
    def space_name(self) -> str:
        return "bergman_disk"

    @property
    def variable_count(self) -> int:
        return 1

    def weight(self, exponent: Exponent) -> Fraction:
        self._check_exponent(exponent)
        return Fraction(1, exponent[0] + 1)


class HardyBidisk(MonomialSpace):
    """H^2 of the bidisk: orthonormal monomials"""

    @property
    def space_name(self) -> str:
        return "hardy_bidisk"

    @property
    def variable_count(self) -> int:
        return 2

    def weight(self, exponent: Exponent) -> Fraction:
        self._check_exponent(exponent)
        return Fraction(1)


class HardyBall2(MonomialSpace):
    """H^2 of the unit ball in C^2: ||z^a w^b||^2 = a! b! / (a+b+1)!"""

    @property
    def space_name(self) -> str:
        return "hardy_ball2"

    @property
    def variable_count(self) -> int:
        return 2

    def weight(self, exponent: Exponent) -> Fraction:
        self._check_exponent(exponent)
        a, b = exponent
        return Fraction(factorial(a) * factorial(b), factorial(a + b + 1))


SPACES: Dict[str, Type[MonomialSpace]] = {
    "bergman_disk": BergmanDisk,
    "hardy_bidisk": HardyBidisk,
    "hardy_ball2": HardyBall2,
}


def get_space(name: str) -> MonomialSpace:
    """
    Instantiate a space by name.

    Raises:
        SpecificationError: If the name is unknown
    """
    space_class = SPACES.get(name)
    if space_class is None:
        raise SpecificationError(
            f"Unknown space '{name}'. Available: {', '.join(sorted(SPACES))}"
        )
    return space_class()
