"""
covertctl exception hierarchy.

This module defines all custom exceptions used throughout covertctl.
All exceptions inherit from CovertCtlError for easy catching of any covertctl-specific error.

None of them subclass ValueError, so raising one inside a pydantic validator
propagates the original exception instead of a pydantic ValidationError.
"""

from covertctl.types import ErrorMessage, FilePath, OriginalError

SECTION_SEPARATOR = "\n\n"
LINE_SEPARATOR = "\n"
BULLET_PREFIX = "  - "

SUGGESTED_FIX_LABEL = "Suggested fix"
PRECONDITION_LABEL = "Violated precondition"
VALID_EXAMPLES_LABEL = "Valid examples"

VALIDATION_PREFIX = "Validation failed: "

UNIT_GAIN_SUGGESTED_FIX = "Closed forms divide by 1 - a^2; choose a gain with |a| != 1."
NOT_PD_SUGGESTED_FIX = "Check that sigma_z > 0 and |a| != 1 for every covariance involved."
OVERFLOW_SUGGESTED_FIX = "Shorten the horizon or stabilize the plant before simulating."


def _build_error_message(
    base_message: str,
    suggested_fix: str | None = None,
    precondition: str | None = None,
    valid_examples: list[str] | None = None,
) -> str:
    """Append labelled sections in the order precondition, fix, examples."""
    sections = [
        (PRECONDITION_LABEL, [precondition] if precondition else []),
        (SUGGESTED_FIX_LABEL, [suggested_fix] if suggested_fix else []),
        (VALID_EXAMPLES_LABEL, [f"{BULLET_PREFIX}{example}" for example in valid_examples or []]),
    ]
    rendered = [
        f"{label}:{LINE_SEPARATOR}" + LINE_SEPARATOR.join(lines)
        for label, lines in sections
        if lines
    ]
    return SECTION_SEPARATOR.join([base_message, *rendered])


class CovertCtlError(Exception):
    """Base exception for all covertctl errors."""

    pass


class DomainError(CovertCtlError):
    """Raised when a mathematical precondition of an operation does not hold."""

    def __init__(
        self,
        message: str,
        precondition: str | None = None,
        suggested_fix: str | None = None,
    ):
        self.precondition = precondition
        self.suggested_fix = suggested_fix

        full_message = _build_error_message(
            message,
            suggested_fix=suggested_fix,
            precondition=precondition,
        )
        super().__init__(full_message)


class UnitGainError(DomainError):
    """Raised when a gain violates the |a| != 1 (or |a| < 1) family of conditions."""

    def __init__(self, gain: float, precondition: str):
        self.gain = gain
        super().__init__(
            f"Gain a={gain!r} is outside the admissible range",
            precondition=precondition,
            suggested_fix=UNIT_GAIN_SUGGESTED_FIX,
        )


class NotPositiveDefiniteError(DomainError):
    """Raised when a covariance matrix fails its Cholesky factorization."""

    def __init__(self, what: str, original_error: OriginalError = None):
        self.what = what
        self.original_error = original_error
        super().__init__(
            f"{what} is not positive definite",
            precondition="covariance must admit a Cholesky factorization",
            suggested_fix=NOT_PD_SUGGESTED_FIX,
        )


class TrajectoryOverflowError(DomainError):
    """Raised when a simulated state exceeds the configured overflow limit."""

    def __init__(self, step: int, value: float, limit: float):
        self.step = step
        self.value = value
        self.limit = limit
        super().__init__(
            f"Trajectory overflow at step {step}: |X| = {abs(value):.3e}",
            precondition=f"|X_n| <= {limit:.0e}",
            suggested_fix=OVERFLOW_SUGGESTED_FIX,
        )


class ValidationError(CovertCtlError):
    """Raised when input validation fails (shapes, lengths, normalization)."""

    def __init__(
        self,
        message: str,
        suggested_fix: str | None = None,
        valid_examples: list | None = None,
    ):
        self.suggested_fix = suggested_fix
        self.valid_examples = valid_examples or []

        base_message = f"{VALIDATION_PREFIX}{message}"
        full_message = _build_error_message(
            base_message,
            suggested_fix=suggested_fix,
            valid_examples=self.valid_examples,
        )
        super().__init__(full_message)


class ConfigurationError(CovertCtlError):
    """Raised when there's a configuration issue."""

    def __init__(self, message: str, suggested_fix: str | None = None):
        self.suggested_fix = suggested_fix

        full_message = _build_error_message(message, suggested_fix=suggested_fix)
        super().__init__(full_message)


class FileOperationError(CovertCtlError):
    """Raised when file system operations fail."""

    def __init__(
        self,
        operation: str,
        path: FilePath,
        message: ErrorMessage,
        original_error: OriginalError = None,
    ):
        self.operation = operation
        self.path = path
        self.original_error = original_error
        super().__init__(f"File {operation} failed for '{path}': {message}")
