"""Exceptions shared across the package."""

from .algebra import CompositionNotZero, NotInSubgroup
from .witt import LengthUnderflow, NonIntegralSolution


class OutOfImplementedRange(ValueError):
    """A (theory, degree, level) cell outside the tabulated range."""


class UnknownAction(LookupError):
    """An operator value that is not determined by the available data."""


class UnknownFixture(KeyError):
    pass


class UnhandledShape(ValueError):
    """A tower term for which no preimage recipe applies."""


class TruncationTooSmall(ValueError):
    pass


class CertificateFailure(AssertionError):
    """A constructed preimage failed its own verification."""


__all__ = [
    "CompositionNotZero", "NotInSubgroup", "LengthUnderflow", "NonIntegralSolution",
    "OutOfImplementedRange", "UnknownAction", "UnknownFixture", "UnhandledShape",
    "TruncationTooSmall", "CertificateFailure",
]
