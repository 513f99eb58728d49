"""Custom exceptions for hyperrxn.

This module contains the exception hierarchy raised across the package. Every
error carries a human readable message, a ``details`` dictionary with
structured context (offsets, shapes, file names) and the process exit code the
command-line interface should use when the error reaches it.
"""

from typing import Any, Dict, List, Optional


class RxnError(Exception):
    """Base exception for hyperrxn errors.

    This is the base class for all errors raised by the package. It provides
    common functionality for error reporting and debugging.

    Attributes:
        message: Error message describing what went wrong
        details: Structured context for the error (if available)
        exit_code: Exit code used by the command-line interface

    Example:
        >>> try:
        ...     parse_molecule("C1CC")
        ... except RxnError as e:
        ...     print(f"hyperrxn error: {e.message}")
    """

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        **kwargs: Any,
    ) -> None:
        """Initialize the error.

        Args:
            message: Error message describing what went wrong
            details: Structured context for the error (if available)
            **kwargs: Extra context merged into ``details``
        """
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})
        self.details.update({key: value for key, value in kwargs.items() if value is not None})

    def __str__(self) -> str:
        """Return string representation of the error."""
        return self.message


class RxnParseError(RxnError):
    """Exception raised when SMILES or SMIRKS text cannot be parsed.

    Attributes:
        message: Error message describing the syntax problem
        text: The text being parsed (if available)
        position: Byte offset of the offending token (if known)
        fragment_index: Index of the dot-separated fragment in a reaction (if known)

    Example:
        >>> try:
        ...     parse_reaction("A>>B")
        ... except RxnParseError as e:
        ...     print(e.position, e.fragment_index)
        0 0
    """

    def __init__(
        self,
        message: str = "Invalid SMILES",
        text: Optional[str] = None,
        position: Optional[int] = None,
        fragment_index: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize the parse error.

        Args:
            message: Error message describing the syntax problem
            text: The text being parsed (if available)
            position: Byte offset of the offending token (if known)
            fragment_index: Index of the fragment in a reaction (if known)
            details: Additional structured context
        """
        super().__init__(
            message,
            details,
            text=text,
            position=position,
            fragment_index=fragment_index,
        )
        self.text = text
        self.position = position
        self.fragment_index = fragment_index

    def with_fragment(
        self, fragment_index: int, line: str, offset: int = 0
    ) -> "RxnParseError":
        """Return a copy of this error located inside a whole reaction line.

        Args:
            fragment_index: Index of the failing dot-separated fragment
            line: The full reaction text
            offset: Byte offset of the fragment within ``line``
        """
        position = None if self.position is None else self.position + offset
        details = {k: v for k, v in self.details.items() if k not in ("text", "position")}
        details["fragment"] = self.text
        return type(self)(
            self.message,
            text=line,
            position=position,
            fragment_index=fragment_index,
            details=details,
        )


class RxnRingClosureError(RxnParseError):
    """Exception raised for unbalanced or conflicting ring-closure digits."""


class RxnValenceError(RxnParseError):
    """Exception raised when an atom exceeds its allowed valence.

    Also raised when a bracket atom violates the hydrogen or charge bounds
    (at most 8 hydrogens, absolute formal charge at most 4).
    """


class RxnUnsupportedError(RxnParseError):
    """Exception raised for SMILES features outside the supported subset.

    Wildcard atoms, quadruple bonds and malformed bracket atoms end up here.
    """


class RxnValidationError(RxnError):
    """Exception raised when arguments fail validation.

    Attributes:
        message: Error message describing the validation issue
        validation_errors: List of specific validation errors (if available)

    Example:
        >>> try:
        ...     permute_reaction(rxn, [[0]], [1, 0], [0])
        ... except RxnValidationError as e:
        ...     print(e.validation_errors)
    """

    def __init__(
        self,
        message: str = "Validation failed",
        validation_errors: Optional[List[Any]] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize the validation error.

        Args:
            message: Error message describing the validation issue
            validation_errors: List of specific validation errors (if available)
            details: Additional structured context
        """
        super().__init__(message, details)
        self.validation_errors = validation_errors or []


class RxnGraphError(RxnError):
    """Exception raised when a reaction cannot be turned into an rxn-hypergraph."""


class RxnShapeError(RxnError):
    """Exception raised for tensor or feature dimension mismatches.

    Attributes:
        expected: The expected shape (if known)
        actual: The shape that was found (if known)
    """

    def __init__(
        self,
        message: str = "Shape mismatch",
        expected: Optional[Any] = None,
        actual: Optional[Any] = None,
    ) -> None:
        """Initialize the shape error.

        Args:
            message: Error message describing the mismatch
            expected: The expected shape (if known)
            actual: The shape that was found (if known)
        """
        super().__init__(message, expected=expected, actual=actual)
        self.expected = expected
        self.actual = actual


class RxnNumericError(RxnError):
    """Exception raised when a computation produces NaN or infinite values.

    Attributes:
        operation: Name of the operation that produced the values (if known)
    """

    exit_code = 2

    def __init__(self, message: str = "Non-finite value", operation: Optional[str] = None) -> None:
        """Initialize the numeric error.

        Args:
            message: Error message describing the failure
            operation: Name of the operation that produced the values (if known)
        """
        super().__init__(message, operation=operation)
        self.operation = operation


class RxnConfigError(RxnError):
    """Exception raised for invalid configuration files or values."""


class RxnDatasetError(RxnError):
    """Exception raised for empty, malformed, or mutated datasets.

    Attributes:
        path: Dataset file involved (if known)
        line: 1-based line number of the offending record (if known)
    """

    def __init__(
        self,
        message: str = "Invalid dataset",
        path: Optional[str] = None,
        line: Optional[int] = None,
    ) -> None:
        """Initialize the dataset error.

        Args:
            message: Error message describing the dataset issue
            path: Dataset file involved (if known)
            line: 1-based line number of the offending record (if known)
        """
        super().__init__(message, path=path, line=line)
        self.path = path
        self.line = line


class RxnCheckpointError(RxnError):
    """Exception raised for unreadable checkpoints or format-version mismatches."""


class RxnModelError(RxnError):
    """Exception raised when an operation is not supported by a model.

    Interpretability scores, for example, need attention weights and are not
    available for relational graph convolution models.
    """


class RxnRankingError(RxnError):
    """Exception raised for malformed rank matrices or candidate sets."""
