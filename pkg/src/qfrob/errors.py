"""Exceptions shared across the package, mapped to CLI exit codes."""

EXIT_OK = 0
EXIT_PRECISION = 2
EXIT_VALIDATION = 3
EXIT_COMPARISON = 4


class QfrobError(Exception):
    """Base class for package errors."""

    exit_code = 1


class PrecisionError(QfrobError):
    """A certification failed at the working precision; raise G and retry."""

    exit_code = EXIT_PRECISION


class ValidationError(QfrobError):
    """Malformed input data (connection file, flag combination, precondition)."""

    exit_code = EXIT_VALIDATION


class ComparisonError(QfrobError):
    """A cross-validation (direct vs exterior power, Betti match) failed."""

    exit_code = EXIT_COMPARISON
