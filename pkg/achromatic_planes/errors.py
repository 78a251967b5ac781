"""Exception hierarchy for the achromatic_planes package.

Every error raised on purpose by the package derives from :class:`AchromaticError`.
Most also derive from the closest builtin so callers can catch ``ValueError`` without
importing this module.
"""

from __future__ import annotations


class AchromaticError(Exception):
    """Base class for all package errors."""


class NotPrimePower(AchromaticError, ValueError):
    """Raised when a field order is not a prime power."""

    def __init__(self, order: int) -> None:
        super().__init__(f"{order} is not a prime power")
        self.order = order


class FieldTooLarge(AchromaticError, ValueError):
    """Raised when a field order exceeds the supported range."""


class FieldMismatch(AchromaticError, ValueError):
    """Raised when arithmetic mixes elements of different fields."""


class ZeroInverse(AchromaticError, ZeroDivisionError):
    """Raised when inverting the zero element."""


class NoUniqueLine(AchromaticError, ValueError):
    """Raised when a point pair does not lie on exactly one line."""

    def __init__(self, p1: int, p2: int, found: int) -> None:
        super().__init__(f"points {p1} and {p2} lie on {found} lines, expected exactly 1")
        self.p1 = p1
        self.p2 = p2
        self.found = found


class InvalidPlane(AchromaticError, ValueError):
    """Raised when an incidence structure cannot serve as a projective plane."""


class BadMultiplicity(AchromaticError, ValueError):
    """Raised when a point does not occur r+1 times in a base matrix."""


class HypothesisViolated(AchromaticError, ValueError):
    """Raised when arguments fall outside the hypotheses of a theorem."""


class STooSmall(HypothesisViolated):
    """Raised when the copy count s is too small for the plane construction."""


class PreconditionViolated(AchromaticError, ValueError):
    """Raised when an operation is called outside its preconditions."""


class ExtensionFailed(AchromaticError, RuntimeError):
    """Raised when no column is available for the extra colour."""


class MatrixFormatError(AchromaticError, ValueError):
    """Raised for malformed matrices and malformed interchange documents."""
