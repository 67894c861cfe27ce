"""Tests for logging configuration module."""

import json
import logging
import os
import sys
from unittest.mock import patch

import pytest

from henselkit.lib.logging import JsonFormatter, setup_logging


def make_record(level=logging.INFO, msg="message", args=(), exc_info=None, name="henselkit"):
    return logging.LogRecord(
        name=name,
        level=level,
        pathname="hensel.py",
        lineno=10,
        msg=msg,
        args=args,
        exc_info=exc_info,
    )


class TestJsonFormatter:
    """Tests for JsonFormatter class."""

    def test_format_basic_message(self):
        """Test the payload keys."""
        parsed = json.loads(JsonFormatter().format(make_record(name="henselkit.solver.hensel")))

        assert parsed["level"] == "INFO"
        assert parsed["name"] == "henselkit.solver.hensel"
        assert parsed["message"] == "message"
        assert "time" in parsed

    def test_format_with_args(self):
        """Test %-style arguments are interpolated."""
        record = make_record(logging.DEBUG, "newton step %d: residual order %s", (2, "5"))
        parsed = json.loads(JsonFormatter().format(record))

        assert parsed["message"] == "newton step 2: residual order 5"
        assert parsed["level"] == "DEBUG"

    def test_format_with_exception(self):
        """Test exception info is included."""
        try:
            raise ZeroDivisionError("Fraction(1, 0)")
        except ZeroDivisionError:
            exc_info = sys.exc_info()

        parsed = json.loads(JsonFormatter().format(make_record(logging.ERROR, exc_info=exc_info)))

        assert parsed["level"] == "ERROR"
        assert "ZeroDivisionError" in parsed["exc_info"]

    def test_context_fields(self):
        """Test stage and iteration passed through extra= become fields."""
        record = make_record(msg="newton step")
        record.iteration = 3
        record.stage = 2
        parsed = json.loads(JsonFormatter().format(record))

        assert parsed["iteration"] == 3
        assert parsed["stage"] == 2
        assert "suite" not in parsed

    def test_format_non_ascii(self):
        """Test non-ASCII text such as γ and ∂ survives."""
        parsed = json.loads(JsonFormatter().format(make_record(msg="γ = (1, -1/2), ∂s = s/(2t)")))

        assert parsed["message"] == "γ = (1, -1/2), ∂s = s/(2t)"


class TestSetupLogging:
    """Tests for setup_logging function."""

    def teardown_method(self):
        """Reset the root logger."""
        root = logging.getLogger()
        root.handlers.clear()
        root.setLevel(logging.WARNING)

    @patch.dict(os.environ, {"HENSELKIT_LOG_LEVEL": "DEBUG"}, clear=False)
    def test_debug_level(self):
        """Test setting DEBUG log level."""
        setup_logging()

        assert logging.getLogger().level == logging.DEBUG

    @patch.dict(os.environ, {"HENSELKIT_LOG_LEVEL": "info"}, clear=False)
    def test_case_insensitive_level(self):
        """Test that log level is case insensitive."""
        setup_logging()

        assert logging.getLogger().level == logging.INFO

    @patch.dict(os.environ, {"HENSELKIT_LOG_LEVEL": "INVALID"}, clear=False)
    def test_invalid_level_defaults_to_warning(self):
        """Test that an unknown level falls back to WARNING."""
        setup_logging()

        assert logging.getLogger().level == logging.WARNING

    @patch.dict(os.environ, {}, clear=True)
    def test_default_level_is_warning(self):
        """Test the default keeps stderr quiet below WARNING."""
        setup_logging()

        assert logging.getLogger().level == logging.WARNING

    @patch.dict(os.environ, {"HENSELKIT_LOG_LEVEL": "DEBUG"}, clear=False)
    def test_argument_overrides_environment(self):
        """Test an explicit level wins over HENSELKIT_LOG_LEVEL."""
        setup_logging("error")

        assert logging.getLogger().level == logging.ERROR

    @patch.dict(os.environ, {"HENSELKIT_LOG_JSON": "1"}, clear=False)
    def test_json_format_enabled(self):
        """Test JSON logging when HENSELKIT_LOG_JSON=1."""
        setup_logging()

        root = logging.getLogger()
        assert len(root.handlers) == 1
        assert isinstance(root.handlers[0].formatter, JsonFormatter)

    @patch.dict(os.environ, {"HENSELKIT_LOG_JSON": "0"}, clear=False)
    def test_json_format_disabled(self):
        """Test plain logging when HENSELKIT_LOG_JSON is not 1."""
        setup_logging()

        root = logging.getLogger()
        assert not isinstance(root.handlers[0].formatter, JsonFormatter)

    def test_clears_existing_handlers(self):
        """Test that setup_logging replaces existing handlers."""
        root = logging.getLogger()
        root.addHandler(logging.StreamHandler())
        root.addHandler(logging.StreamHandler())

        setup_logging()

        assert len(root.handlers) == 1

    def test_handler_writes_to_stderr(self):
        """Test that records go to stderr, never stdout."""
        setup_logging()

        assert logging.getLogger().handlers[0].stream is sys.stderr


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
