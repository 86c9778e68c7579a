"""Exception hierarchy shared by every ainfty_toolkit module.

Verification outcomes (relation checks, functor checks, ideal closure) are returned as
reports; the exceptions below signal misuse, violated preconditions or infeasible sizes.
"""
from typing import Optional


class AInftyToolkitError(Exception):
    """Base class for all toolkit errors."""


class UsageError(AInftyToolkitError, ValueError):
    """Dimension mismatch, non-composable tuple, mismatched complexes."""


class ParseError(AInftyToolkitError, ValueError):
    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class PreconditionError(AInftyToolkitError):
    """A documented precondition of an operation does not hold."""


class IntegrityError(AInftyToolkitError):
    """Data refers to something that was never declared."""


class InvariantViolation(AInftyToolkitError):
    """A structural identity (d² = 0, Maurer-Cartan, ideal closure) failed."""


class ArityTruncationError(AInftyToolkitError):
    pass


class HomotopyIdempotenceError(PreconditionError):
    pass


class InfeasibleSizeError(AInftyToolkitError):
    def __init__(self, message: str, estimate: Optional[int] = None):
        self.estimate = estimate
        if estimate is not None:
            message = f"{message} (estimated size {estimate})"
        super().__init__(message)
