"""Tests for structured logging configuration.

Tests cover:
- Run and identity context variables
- Structured and plain formatters
- Timing decorator
- configure_logging handler setup
"""

import asyncio
import json
import logging
from io import StringIO

import pytest

from core.observability.logging_config import (
    PlainFormatter,
    StructuredFormatter,
    clear_context,
    configure_logging,
    get_context,
    get_logger,
    set_context,
    timing_decorator,
)


def _record(msg="Test message", level=logging.INFO):
    return logging.LogRecord(
        name="test.logger",
        level=level,
        pathname="test.py",
        lineno=42,
        msg=msg,
        args=(),
        exc_info=None,
    )


@pytest.fixture(autouse=True)
def _clean_context():
    clear_context()
    yield
    clear_context()


class TestContextVariables:
    """Test context variable management."""

    def test_set_context_all_vars(self):
        set_context(run_id_val="run1", identity_id_val="li2_half", group_val="lemmas")

        assert get_context() == {"run_id": "run1", "identity_id": "li2_half", "group": "lemmas"}

    def test_set_context_partial(self):
        set_context(identity_id_val="alt_hk")

        context = get_context()
        assert context["identity_id"] == "alt_hk"
        assert context["run_id"] is None
        assert context["group"] is None

    def test_clear_context(self):
        set_context(run_id_val="run1", identity_id_val="alt_hk")
        clear_context()

        assert all(v is None for v in get_context().values())

    def test_context_isolation(self):
        set_context(run_id_val="run1", identity_id_val="alt_hk")
        set_context(identity_id_val="alt_h2k")

        context = get_context()
        assert context["identity_id"] == "alt_h2k"
        assert context["run_id"] == "run1"


class TestStructuredFormatter:
    """Test structured JSON logging formatter."""

    def test_format_basic_message(self):
        data = json.loads(StructuredFormatter().format(_record()))

        assert data["level"] == "INFO"
        assert data["logger"] == "test.logger"
        assert data["message"] == "Test message"
        assert data["line"] == 42
        assert "timestamp" in data
        assert "identity_id" not in data

    def test_format_with_context(self):
        set_context(run_id_val="abc", identity_id_val="pi_cube_1", group_val="integrals_valean")

        data = json.loads(StructuredFormatter().format(_record()))

        assert data["run_id"] == "abc"
        assert data["identity_id"] == "pi_cube_1"
        assert data["group"] == "integrals_valean"

    def test_format_with_duration(self):
        record = _record("Completed run_selected", logging.DEBUG)
        record.duration_ms = 123.45

        data = json.loads(StructuredFormatter().format(record))

        assert data["duration_ms"] == 123.45

    def test_format_with_extra_data(self):
        record = _record("li2_half failed")
        record.extra_data = {"tol": 1e-25, "abs_diff": "3.0e-20"}

        data = json.loads(StructuredFormatter().format(record))

        assert data["tol"] == 1e-25
        assert data["abs_diff"] == "3.0e-20"


class TestPlainFormatter:
    """Test human-readable logging formatter."""

    def test_format_basic_message(self):
        result = PlainFormatter().format(_record())

        assert "INFO" in result
        assert "test.logger" in result
        assert "Test message" in result
        assert "[" not in result.split("Test message")[0]

    def test_format_with_context(self):
        set_context(run_id_val="abc", identity_id_val="li3_i", group_val="lemmas")

        result = PlainFormatter().format(_record())

        assert "run=abc" in result
        assert "id=li3_i" in result
        assert "group=lemmas" in result

    def test_format_with_timing(self):
        record = _record("Operation completed", logging.DEBUG)
        record.duration_ms = 123.45

        assert "[took 123.45ms]" in PlainFormatter().format(record)


class TestLoggingConfiguration:
    """Test logger configuration."""

    def test_configure_logging_plain(self):
        root = configure_logging(level=logging.INFO)

        assert len(root.handlers) == 1
        assert isinstance(root.handlers[0].formatter, PlainFormatter)
        assert root.level == logging.INFO

    def test_configure_logging_json_with_file(self, tmp_path):
        log_file = tmp_path / "run.log"
        root = configure_logging(json_format=True, level=logging.WARNING, log_file=str(log_file))

        assert len(root.handlers) == 2
        assert all(isinstance(h.formatter, StructuredFormatter) for h in root.handlers)

        get_logger("psiverify.test").warning("written to file")
        for handler in root.handlers:
            handler.flush()
        data = json.loads(log_file.read_text().strip().splitlines()[-1])
        assert data["message"] == "written to file"

        for handler in root.handlers[:]:
            handler.close()
            root.removeHandler(handler)

    def test_get_logger(self):
        logger = get_logger("test.module")

        assert isinstance(logger, logging.Logger)
        assert logger.name == "test.module"


class TestTimingDecorator:
    """Test performance timing decorator."""

    @pytest.fixture
    def captured(self):
        stream = StringIO()
        handler = logging.StreamHandler(stream)
        handler.setFormatter(PlainFormatter())
        root = logging.getLogger()
        old_handlers, old_level = root.handlers[:], root.level
        root.handlers = [handler]
        yield stream, root
        root.handlers = old_handlers
        root.setLevel(old_level)

    def test_timing_decorator_sync(self, captured):
        stream, root = captured
        root.setLevel(logging.DEBUG)

        @timing_decorator(name="test_operation")
        def test_func():
            return "result"

        assert test_func() == "result"
        assert "Completed test_operation" in stream.getvalue()

    def test_timing_decorator_skips_when_debug_disabled(self, captured):
        stream, root = captured
        root.setLevel(logging.INFO)

        @timing_decorator(name="no_debug_operation")
        def test_func():
            return "result"

        assert test_func() == "result"
        assert stream.getvalue() == ""

    async def test_timing_decorator_async(self, captured):
        stream, root = captured
        root.setLevel(logging.DEBUG)

        @timing_decorator(name="async_operation")
        async def async_func():
            await asyncio.sleep(0.01)
            return "async_result"

        assert await async_func() == "async_result"
        assert "Completed async_operation" in stream.getvalue()
