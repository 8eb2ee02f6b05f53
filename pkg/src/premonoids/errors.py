"""Exception types shared across the package.

Validation errors carry machine-readable witnesses so that callers (and the
CLI) can report exactly which law failed and where.
"""
from __future__ import annotations


class PremonoidsError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(PremonoidsError, ValueError):
    """Malformed input data (non-square table, out-of-range index, ...)."""


class NonAssociativeError(PremonoidsError, ValueError):
    """The multiplication table violates associativity."""

    def __init__(self, triple: tuple[int, int, int]):
        self.witness = triple
        x, y, z = triple
        super().__init__(f"(x*y)*z != x*(y*z) for (x, y, z) = ({x}, {y}, {z})")


class BadIdentityError(PremonoidsError, ValueError):
    """The declared identity does not act as a two-sided identity."""

    def __init__(self, element: int):
        self.witness = element
        super().__init__(f"identity law fails at element {element}")


class DegreeTooSmallError(PremonoidsError, ValueError):
    """Irreducibility/atom degree must be at least 2."""


class NotComputableError(PremonoidsError):
    """A query needs data the instance cannot certify (e.g. heights of a
    lazily presented carrier without a height rule)."""


class NotWeaklyPositiveError(PremonoidsError):
    """Operation requires the weak positivity flag to hold."""


class NotFactorableError(PremonoidsError):
    """Some non-unit admits no factorization over the candidate alphabet."""

    def __init__(self, element):
        self.witness = element
        super().__init__(f"element {element!r} is not a product of the candidate irreducibles")


class SingularMatrixError(PremonoidsError, ValueError):
    """Matrix operations here require a nonzero determinant."""


class DetTooLargeError(PremonoidsError, ValueError):
    """Determinant exceeds the configured trial-division bound."""


class CapExceededError(PremonoidsError, ValueError):
    """A lazily presented family was asked to build an element above its cap."""


class NotProductOneError(PremonoidsError, ValueError):
    """No ordering of the multiset multiplies to the group identity."""


class BoundTooSmallError(PremonoidsError, ValueError):
    """The word-length bound cannot even hold the rewriting rules."""
