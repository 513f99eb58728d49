"""Utility modules for hyperrxn."""

from .error_handling import (
    EXIT_INPUT_ERROR,
    EXIT_NUMERIC_ERROR,
    EXIT_OK,
    config_error_from,
    exit_code_for,
    format_error_message,
    log_error,
)
from .exceptions import (
    RxnCheckpointError,
    RxnConfigError,
    RxnDatasetError,
    RxnError,
    RxnGraphError,
    RxnModelError,
    RxnNumericError,
    RxnParseError,
    RxnRankingError,
    RxnRingClosureError,
    RxnShapeError,
    RxnUnsupportedError,
    RxnValenceError,
    RxnValidationError,
)
from .hashing import lines_digest, stable_hash64

__all__ = [
    "EXIT_INPUT_ERROR",
    "EXIT_NUMERIC_ERROR",
    "EXIT_OK",
    # Exception classes
    "RxnCheckpointError",
    "RxnConfigError",
    "RxnDatasetError",
    "RxnError",
    "RxnGraphError",
    "RxnModelError",
    "RxnNumericError",
    "RxnParseError",
    "RxnRankingError",
    "RxnRingClosureError",
    "RxnShapeError",
    "RxnUnsupportedError",
    "RxnValenceError",
    "RxnValidationError",
    # Error handling utilities
    "config_error_from",
    "exit_code_for",
    "format_error_message",
    "log_error",
    # Hashing utilities
    "lines_digest",
    "stable_hash64",
]
