"""
Error hierarchy and error classification for the matrix-profile toolkit.

Every error raised by the library carries a stable ``error_type`` name, a
``details`` dictionary for structured logging, and the process exit code the
command-line surface reports for it:

- 0 success
- 1 usage error (bad flags, invalid configuration)
- 2 data error (unreadable or invalid input, window/series mismatches)
- 3 numerical or contract error (the computation could not honour its contract)
"""

from typing import Any, Dict, Optional


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CONTRACT = 3


class MatrixProfileError(Exception):
    """Base exception for all library errors."""

    exit_code: int = EXIT_CONTRACT

    def __init__(
        self,
        message: str,
        error_type: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.error_type = error_type or type(self).__name__
        self.details = details or {}


class UsageError(MatrixProfileError):
    """Invalid command-line usage."""

    exit_code = EXIT_USAGE


class DataError(MatrixProfileError):
    """Input data violates an operation's preconditions."""

    exit_code = EXIT_DATA


class ContractError(MatrixProfileError):
    """A computation could not honour its contract."""

    exit_code = EXIT_CONTRACT


# series-core

class NonFiniteInput(DataError):
    """A sample is NaN or infinite."""


class WindowTooLarge(DataError):
    """Window length exceeds the series length."""


class WindowTooSmall(DataError):
    """Window length is below 2."""


class LengthMismatch(DataError):
    """Two subsequences (or a query and a window) differ in length."""


class SeriesTooShort(DataError):
    """Series too short for the requested join."""


# dictionary / dict-join

class SourceMismatch(DataError):
    """Dictionary was not learned from the given series."""


class WindowMismatch(DataError):
    """Requested window length differs from the dictionary's."""


class EmptyDictionary(DataError):
    """Dictionary holds no segments."""


class SegmentTooShort(DataError):
    """A dictionary segment is shorter than the window length."""


class EmptyProfile(DataError):
    """Matrix profile has no entries."""


class DegenerateLabels(DataError):
    """Labels contain a single class."""


class NoProgress(ContractError):
    """Every candidate start is masked before the stop rule fired."""


class IterationCapExceeded(ContractError):
    """Learning hit max_iterations before the stop rule fired."""


# io-formats

class ParseError(DataError):
    """File content could not be parsed."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        field: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{message} ({', '.join(location)})"
        merged = {"line": line, "field": field}
        merged.update(details or {})
        super().__init__(message, details=merged)
        self.line = line
        self.field = field


class VersionError(DataError):
    """Unsupported format version or unknown future fields."""


class SchemaError(DataError):
    """Document parsed but violates the format's invariants."""


def classify_error(error: BaseException) -> int:
    """
    Map an exception to the process exit code.

    Args:
        error: Exception raised while running a command

    Returns:
        Exit code (1 usage, 2 data, 3 numerical/contract)
    """
    if isinstance(error, MatrixProfileError):
        return error.exit_code

    # Imported lazily: config imports nothing from here
    from .config.validation import ConfigurationError

    if isinstance(error, ConfigurationError):
        return EXIT_USAGE

    if isinstance(error, (FloatingPointError, ArithmeticError)):
        return EXIT_CONTRACT

    if isinstance(error, OSError):
        return EXIT_DATA

    return EXIT_CONTRACT
