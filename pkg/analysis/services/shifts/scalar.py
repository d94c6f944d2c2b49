"""
Generating-function form of the shift identities.

Pairing an operator identity with kernel sections turns it into a
polynomial identity in x = z conj(w) (and y for the second variable),
checked here by exact coefficient comparison.
"""

from fractions import Fraction
import logging

from ..douglas.polynomials import Polynomial
from ..exceptions import SpecificationError
from .identities import BERGMAN, BIDISK

logger = logging.getLogger(__name__)


def _x(variables: int = 1) -> Polynomial:
    return Polynomial.monomial((1,) + (0,) * (variables - 1))


def _y() -> Polynomial:
    return Polynomial.monomial((0, 1))


def _one(variables: int = 1) -> Polynomial:
    return Polynomial.constant(variables)


def _pow(p: Polynomial, k: int) -> Polynomial:
    result = _one(p.variable_count)
    for _ in range(k):
        result = result * p
    return result


def bergman_sides(n: int):
    """
    (1 + N x^{N+1} - (N+1) x^N,  (1-x)^2 sum_{j<N} (j+1) x^j)
    """
    x = _x()
    lhs = (
        _one()
        + Polynomial.monomial((n + 1,), n)
        - Polynomial.monomial((n,), n + 1)
    )
    generating = generating_polynomial(BERGMAN, n)
    rhs = _pow(_one() - x, 2) * generating
    return lhs, rhs


def bidisk_sides(n: int):
    """
    (1 + sum_{j=1..N} x^{N-j+1} y^j - sum_{j=0..N} x^{N-j} y^j,
     (1-x)(1-y) sum_{a+b <= N-1} x^a y^b)
    """
    x, y = _x(2), _y()
    lhs = _one(2)
    for j in range(1, n + 1):
        lhs = lhs + Polynomial.monomial((n - j + 1, j))
    for j in range(n + 1):
        lhs = lhs - Polynomial.monomial((n - j, j))
    rhs = (_one(2) - x) * (_one(2) - y) * generating_polynomial(BIDISK, n)
    return lhs, rhs


def generating_polynomial(identity: str, n: int) -> Polynomial:
    """
    Kernel-side form of the projection.

    bergman: sum_{j<N} (j+1) x^j, the coefficient (j+1) being 1/||z^j||^2;
    bidisk: sum_{a+b<=N-1} x^a y^b.
    """
    if identity == BERGMAN:
        return Polynomial.from_dict(1, {(j,): Fraction(j + 1) for j in range(n)})
    if identity == BIDISK:
        return Polynomial.from_dict(
            2, {(a, b): Fraction(1) for a in range(n) for b in range(n - a)}
        )
    raise SpecificationError(
        f"No generating polynomial for identity '{identity}' (use {BERGMAN} or {BIDISK})"
    )


def poly_identity_check(identity: str, n: int) -> bool:
    """
    Exact coefficient comparison of the generating-function identity.

    Raises:
        SpecificationError: If N < 1 or the identity has no scalar form
    """
    if n < 1:
        raise SpecificationError(f"N must be >= 1, got {n}")
    if identity == BERGMAN:
        lhs, rhs = bergman_sides(n)
    elif identity == BIDISK:
        lhs, rhs = bidisk_sides(n)
    else:
        raise SpecificationError(
            f"No scalar identity for '{identity}' (use {BERGMAN} or {BIDISK})"
        )
    holds = (lhs - rhs).is_zero
    if not holds:
        logger.warning(f"Scalar {identity} identity fails for N={n}: {lhs - rhs}")
    return holds
