"""Tests for exception message formatting."""

from typing import Final

from covertctl.exceptions import (
    BULLET_PREFIX,
    SECTION_SEPARATOR,
    ConfigurationError,
    CovertCtlError,
    DomainError,
    FileOperationError,
    NotPositiveDefiniteError,
    TrajectoryOverflowError,
    UnitGainError,
    ValidationError,
)

BASE_MESSAGE: Final[str] = "Bad input"
SUGGESTED_FIX: Final[str] = "Use a valid value"
PRECONDITION: Final[str] = "0 < |b| < 1"
EXAMPLE_ONE: Final[str] = "0.5"
EXAMPLE_TWO: Final[str] = "-0.5"

SUGGESTED_FIX_SECTION: Final[str] = f"Suggested fix:\n{SUGGESTED_FIX}"
PRECONDITION_SECTION: Final[str] = f"Violated precondition:\n{PRECONDITION}"
VALID_EXAMPLES_SECTION: Final[str] = (
    f"Valid examples:\n{BULLET_PREFIX}{EXAMPLE_ONE}\n{BULLET_PREFIX}{EXAMPLE_TWO}"
)


def test_validation_error_formats_sections() -> None:
    """ValidationError should include suggested fixes and examples in order."""
    error = ValidationError(
        BASE_MESSAGE,
        suggested_fix=SUGGESTED_FIX,
        valid_examples=[EXAMPLE_ONE, EXAMPLE_TWO],
    )

    expected_message = SECTION_SEPARATOR.join(
        [f"Validation failed: {BASE_MESSAGE}", SUGGESTED_FIX_SECTION, VALID_EXAMPLES_SECTION]
    )
    assert str(error) == expected_message


def test_domain_error_puts_precondition_first() -> None:
    error = DomainError(BASE_MESSAGE, precondition=PRECONDITION, suggested_fix=SUGGESTED_FIX)

    expected_message = SECTION_SEPARATOR.join(
        [BASE_MESSAGE, PRECONDITION_SECTION, SUGGESTED_FIX_SECTION]
    )
    assert str(error) == expected_message
    assert error.precondition == PRECONDITION


def test_domain_error_without_sections_is_bare_message() -> None:
    assert str(DomainError(BASE_MESSAGE)) == BASE_MESSAGE


def test_configuration_error_formats_suggested_fix() -> None:
    error = ConfigurationError(BASE_MESSAGE, suggested_fix=SUGGESTED_FIX)
    assert str(error) == SECTION_SEPARATOR.join([BASE_MESSAGE, SUGGESTED_FIX_SECTION])


def test_unit_gain_error_names_gain_and_precondition() -> None:
    error = UnitGainError(1.0, "|a| != 1")
    assert isinstance(error, DomainError)
    assert error.gain == 1.0
    assert "a=1.0" in str(error)
    assert "Violated precondition:\n|a| != 1" in str(error)


def test_not_positive_definite_error_keeps_cause() -> None:
    cause = RuntimeError("leading minor not positive")
    error = NotPositiveDefiniteError("cov1", cause)
    assert error.original_error is cause
    assert str(error).startswith("cov1 is not positive definite")


def test_trajectory_overflow_error_reports_step() -> None:
    error = TrajectoryOverflowError(12, -3.0e16, 1e15)
    assert error.step == 12
    assert "step 12" in str(error)


def test_file_operation_error_message() -> None:
    error = FileOperationError("write", "/tmp/out.csv", "disk full")
    assert str(error) == "File write failed for '/tmp/out.csv': disk full"


def test_errors_are_not_value_errors() -> None:
    """pydantic only wraps ValueError/AssertionError raised in validators."""
    for error_type in (DomainError, ValidationError, ConfigurationError, FileOperationError):
        assert issubclass(error_type, CovertCtlError)
        assert not issubclass(error_type, ValueError)
