"""
Error kinds raised by the spectral walk toolkit.

Input problems subclass ValueError, numerical problems subclass ArithmeticError,
so the CLI can map them to exit codes 2 and 3 respectively.
"""

from typing import Optional


class SpectralWalkError(Exception):
    """Base class for every error raised by this package."""

    kind = "SpectralWalkError"


class InputError(SpectralWalkError, ValueError):
    """Malformed or out-of-domain input."""


class NumericalError(SpectralWalkError, ArithmeticError):
    """A computation could not be carried out reliably."""


class IndexOutOfRange(InputError):
    kind = "IndexOutOfRange"


class SelfLoop(InputError):
    kind = "SelfLoop"


class InvalidSize(InputError):
    kind = "InvalidSize"


class ParseError(InputError):
    kind = "ParseError"

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class NotUnit(InputError):
    kind = "NotUnit"


class DimensionMismatch(InputError):
    kind = "DimensionMismatch"


class MismatchedReference(InputError):
    kind = "MismatchedReference"


class TooLarge(InputError):
    kind = "TooLarge"


class OutOfRange(InputError):
    kind = "OutOfRange"


class NotAnAtom(InputError):
    kind = "NotAnAtom"


class PoleAtAtom(NumericalError):
    kind = "PoleAtAtom"
