"""Error handling utilities for hyperrxn.

This module provides utilities for turning package errors into exit codes,
user-facing messages and log records. The command-line interface routes every
:class:`~hyperrxn.utils.exceptions.RxnError` through these helpers.
"""

import logging
from typing import Optional

from pydantic import ValidationError

from .exceptions import (
    RxnCheckpointError,
    RxnConfigError,
    RxnDatasetError,
    RxnError,
    RxnNumericError,
    RxnParseError,
    RxnShapeError,
    RxnValidationError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NUMERIC_ERROR = 2


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the process exit code.

    Args:
        error: The exception that reached the command-line boundary

    Returns:
        ``2`` for numeric failures, ``1`` for every other package error and
        for pydantic validation errors

    Example:
        >>> exit_code_for(RxnNumericError("loss is NaN"))
        2
        >>> exit_code_for(RxnParseError("bad token"))
        1
    """
    if isinstance(error, RxnError):
        return error.exit_code
    return EXIT_INPUT_ERROR


def config_error_from(error: ValidationError, source: Optional[str] = None) -> RxnConfigError:
    """Wrap a pydantic validation error raised while loading a configuration.

    Args:
        error: The pydantic validation error
        source: File or flag set the values came from (if known)

    Returns:
        An :class:`RxnConfigError` listing each failing field
    """
    problems = [
        f"{'.'.join(str(part) for part in item['loc'])}: {item['msg']}" for item in error.errors()
    ]
    where = f" in {source}" if source else ""
    return RxnConfigError(f"Invalid configuration{where}: {'; '.join(problems)}", source=source)


def format_error_message(error: RxnError) -> str:
    """Format a package error into a user-friendly message.

    Args:
        error: The error to format

    Returns:
        A formatted error message string with positional context

    Example:
        >>> error = RxnParseError("Unexpected token 'A'", position=0, fragment_index=0)
        >>> format_error_message(error)
        "Unexpected token 'A' (fragment 0, byte offset 0)"
    """
    message = str(error)

    if isinstance(error, RxnParseError):
        context = []
        if error.fragment_index is not None:
            context.append(f"fragment {error.fragment_index}")
        if error.position is not None:
            context.append(f"byte offset {error.position}")
        if context:
            message += f" ({', '.join(context)})"

    elif isinstance(error, RxnDatasetError):
        if error.path and error.line:
            message += f" ({error.path}, line {error.line})"
        elif error.path:
            message += f" ({error.path})"

    elif isinstance(error, RxnShapeError):
        if error.expected is not None and error.actual is not None:
            message += f" - expected {error.expected}, got {error.actual}"

    elif isinstance(error, RxnNumericError):
        if error.operation:
            message += f" - produced by {error.operation}"
        message += " - try a smaller learning rate"

    elif isinstance(error, RxnCheckpointError):
        message += " - re-train or re-export the checkpoint"

    elif isinstance(error, RxnValidationError) and error.validation_errors:
        message += f" - {', '.join(str(item) for item in error.validation_errors)}"

    return message


def log_error(error: RxnError, logger: Optional[logging.Logger] = None) -> None:
    """Log a package error with appropriate level and context.

    Numeric failures are logged at ERROR, input problems at WARNING.

    Args:
        error: The error to log
        logger: Logger instance to use (defaults to module logger)
    """
    if logger is None:
        logger = logging.getLogger(__name__)

    log_level = logging.ERROR if isinstance(error, RxnNumericError) else logging.WARNING

    message = format_error_message(error)
    context = [
        f"{key}={value}"
        for key, value in sorted(error.details.items())
        if key not in ("position", "fragment_index")
    ]
    if context:
        message += f" ({', '.join(context)})"

    logger.log(log_level, message)
