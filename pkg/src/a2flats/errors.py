"""Exception types shared across the package."""
from .valfield import FieldMismatchError


class DegenerateError(ValueError):
    """A configuration violates a genericity / nondegeneracy precondition."""


class NoProjectionError(DegenerateError):
    """The ideal point does not form a projective frame with the flat, so no projection exists."""


class VerificationError(AssertionError):
    """An internal consistency check failed (never a user error)."""


__all__ = ["DegenerateError", "NoProjectionError", "VerificationError", "FieldMismatchError"]
