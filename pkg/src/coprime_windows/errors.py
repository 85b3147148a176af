"""Exception types shared across the package."""

from __future__ import annotations


class CoprimeWindowsError(Exception):
    """Base class for all package errors."""


class ExpressionSyntaxError(CoprimeWindowsError, ValueError):
    """Raised by the expression parser; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NormalizationError(CoprimeWindowsError, ValueError):
    """A power sum could not be brought to canonical form.

    The coefficient model is a single rational times a single square
    root; two like terms whose radicands differ cannot be merged."""


class PrecisionExceededError(CoprimeWindowsError):
    """An evaluation needed more working precision than the configured cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class UndecidableError(PrecisionExceededError):
    """An enclosure still straddles a decision boundary at the precision cap.

    This is an explicit outcome, never silently resolved by rounding: a
    wrong floor would poison every certificate built on top of it."""


class HypothesisError(CoprimeWindowsError, ValueError):
    """The function fails a growth/decay hypothesis required by an operation."""


class InadmissibleLadderError(CoprimeWindowsError, ValueError):
    """A constant ladder violates an admissibility inequality.

    ``violations`` lists every failed inequality as a human-readable string."""

    def __init__(self, violations: list[str]):
        super().__init__("inadmissible constants: " + "; ".join(violations))
        self.violations = violations


class InternalContradictionError(CoprimeWindowsError):
    """A step reached a state the underlying lemma rules out.

    Signals a precision or admissibility bug rather than a bad input."""


class ConstructionError(CoprimeWindowsError):
    """The witness construction produced a value failing its own postcondition."""
