"""
Exceptions raised by hopfmorita.

Checkers never raise when an identity fails - failures are entries of the
returned report. Exceptions are reserved for violated preconditions, bad input,
and internal consistency failures.
"""
from typing import Optional


class HopfMoritaError(Exception):
    """Base class of all hopfmorita errors."""


class ModelError(HopfMoritaError, ValueError):
    """A model algebra could not be built, or does not support the operation."""


class ScalarParseError(HopfMoritaError, ValueError):
    """Text that does not follow the scalar format "p/q" or "p/q+r/s*i"."""


class TruncationOverflowError(HopfMoritaError, ArithmeticError):
    """A PBW product produced a monomial above the truncation order."""

    def __init__(self, degree: int, truncation: int):
        super().__init__(
            f"PBW product reaches degree {degree}, above the truncation order"
            f" {truncation}"
        )
        self.degree = degree
        self.truncation = truncation


class DomainError(HopfMoritaError, ValueError):
    """An input is outside the domain of an operation."""


class MembershipError(HopfMoritaError):
    """A convolution map is not a member of U(H, A) up to the truncation order."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InconsistencyError(HopfMoritaError):
    """
    An internal consistency check failed. This should be impossible for valid
    inputs and indicates a gap in an earlier verification.
    """


class ProblemError(HopfMoritaError):
    """Bad problem file."""


class ProblemParseError(ProblemError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ProblemValidationError(ProblemError):
    def __init__(self, path: str, message: str, task: Optional[int] = None):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.task = task
