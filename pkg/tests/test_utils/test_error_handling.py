"""Tests for exit codes, error messages and error logging."""

import logging

import pytest
from pydantic import BaseModel, Field, ValidationError

from hyperrxn.utils.error_handling import (
    EXIT_INPUT_ERROR,
    EXIT_NUMERIC_ERROR,
    config_error_from,
    exit_code_for,
    format_error_message,
    log_error,
)
from hyperrxn.utils.exceptions import (
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


class _Sample(BaseModel):
    layers: int = Field(ge=1)


class TestExitCodeFor:
    """Mapping exceptions to process exit codes."""

    def test_numeric_errors_exit_2(self):
        assert exit_code_for(RxnNumericError("NaN")) == EXIT_NUMERIC_ERROR == 2

    def test_input_errors_exit_1(self):
        for error in (
            RxnParseError("bad token"),
            RxnConfigError("bad key"),
            RxnDatasetError("empty"),
            RxnCheckpointError("bad version"),
        ):
            assert exit_code_for(error) == EXIT_INPUT_ERROR == 1

    def test_foreign_errors_exit_1(self):
        assert exit_code_for(ValueError("x")) == 1


class TestConfigErrorFrom:
    """Wrapping pydantic validation errors."""

    def test_lists_failing_fields(self):
        with pytest.raises(ValidationError) as info:
            _Sample(layers=0)
        error = config_error_from(info.value, "run.toml")
        assert isinstance(error, RxnConfigError)
        assert "in run.toml" in error.message
        assert "layers" in error.message
        assert error.details["source"] == "run.toml"

    def test_without_source(self):
        with pytest.raises(ValidationError) as info:
            _Sample(layers="many")
        error = config_error_from(info.value)
        assert error.message.startswith("Invalid configuration: layers")


class TestFormatErrorMessage:
    """User-facing messages with positional context."""

    def test_parse_error_context(self):
        error = RxnParseError("Unexpected token 'A'", position=0, fragment_index=0)
        assert format_error_message(error) == "Unexpected token 'A' (fragment 0, byte offset 0)"

    def test_dataset_error_context(self):
        assert (
            format_error_message(RxnDatasetError("bad label", path="d.tsv", line=3))
            == "bad label (d.tsv, line 3)"
        )
        assert format_error_message(RxnDatasetError("empty", path="d.tsv")) == "empty (d.tsv)"

    def test_shape_error_context(self):
        message = format_error_message(RxnShapeError("mismatch", expected=(2,), actual=(3,)))
        assert message == "mismatch - expected (2,), got (3,)"

    def test_numeric_error_hint(self):
        message = format_error_message(RxnNumericError("loss is NaN", operation="epoch 3"))
        assert "produced by epoch 3" in message
        assert message.endswith("try a smaller learning rate")

    def test_validation_error_items(self):
        error = RxnValidationError("bad order", validation_errors=["duplicate 0"])
        assert format_error_message(error) == "bad order - duplicate 0"

    def test_plain_error(self):
        assert format_error_message(RxnError("plain")) == "plain"


class TestLogError:
    """Log levels and context of logged errors."""

    def test_numeric_logged_at_error(self, caplog):
        with caplog.at_level(logging.DEBUG):
            log_error(RxnNumericError("NaN", operation="adam_step"), logger)
        assert caplog.records[-1].levelno == logging.ERROR
        assert "operation=adam_step" in caplog.records[-1].getMessage()

    def test_input_logged_at_warning(self, caplog):
        with caplog.at_level(logging.DEBUG):
            log_error(RxnParseError("bad", text="CX", position=1))
        record = caplog.records[-1]
        assert record.levelno == logging.WARNING
        assert "text=CX" in record.getMessage()
        assert "position=" not in record.getMessage()
