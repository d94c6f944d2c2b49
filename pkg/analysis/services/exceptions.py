"""
Custom exceptions for kernel, factorization and verification operations.
"""

from typing import Any, Dict, Optional


class RKHSError(Exception):
    """Base exception for all analysis errors"""

    pass


class SpecificationError(RKHSError):
    """Raised when a kernel, point set or polynomial cannot be constructed"""

    pass


class KernelDomainError(RKHSError):
    """Raised when a point lies outside the open domain of a kernel"""

    pass


class ConvergenceError(KernelDomainError):
    """Raised when a truncated diagonal series is evaluated past its radius"""

    pass


class DegenerateBaseError(RKHSError):
    """Raised when k(base, base) is not strictly positive"""

    pass


class UnsupportedVariantError(RKHSError):
    """Raised when an operation needs a kernel variant it was not given"""

    pass


class MatrixValidationError(RKHSError):
    """Raised when a matrix fails a structural check (e.g. not Hermitian)"""

    pass


class ShapeMismatchError(MatrixValidationError):
    """Raised when matrix or polynomial dimensions are incompatible"""

    pass


class TruncationError(RKHSError):
    """Raised when a truncated operator model is too small for a check"""

    pass


class NotASolutionError(RKHSError):
    """Raised when a candidate polynomial matrix does not solve A C = B"""

    def __init__(self, message: str, residual: Optional[Dict[Any, Any]] = None):
        super().__init__(message)
        self.residual = residual or {}


class ParseError(RKHSError):
    """Raised when an input file or JSON document cannot be parsed"""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ConfigError(RKHSError):
    """Raised when a run configuration is invalid"""

    pass


class FactorizationError(RKHSError):
    """Raised when a computed factorization breaks the Douglas norm contract"""

    pass
