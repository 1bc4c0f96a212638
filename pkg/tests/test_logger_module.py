"""Tests for console logging and the operation banners."""

import io
import logging
import sys
from collections.abc import Iterator
from pathlib import Path

import pytest

try:
    from cluster_qis.utils import logger_module
    from cluster_qis.utils.logger_module import ColoredFormatter, get_managed_handler, log_operation, setup_logger
except ModuleNotFoundError:
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / 'src'))
    from cluster_qis.utils import logger_module
    from cluster_qis.utils.logger_module import ColoredFormatter, get_managed_handler, log_operation, setup_logger


class _Terminal(io.StringIO):
    def isatty(self) -> bool:
        return True


@pytest.fixture(autouse=True)
def isolated_root() -> Iterator[logging.Logger]:
    """Restore the root logger after each test.

    Yields
    ------
    logging.Logger
        The root logger.
    """
    root = logging.getLogger()
    saved_level = root.level
    yield root
    for handler in list(root.handlers):
        if getattr(handler, 'cluster_qis_managed', False) or isinstance(handler, logging.NullHandler):
            root.removeHandler(handler)
    root.setLevel(saved_level)


def _managed(root: logging.Logger) -> list[logging.Handler]:
    return [handler for handler in root.handlers if getattr(handler, 'cluster_qis_managed', False)]


@pytest.mark.parametrize(
    ('flags', 'level'),
    [
        ({}, logging.WARNING),
        ({'verbose': True}, logging.INFO),
        ({'quiet': True}, logging.ERROR),
        ({'debug': True}, logging.DEBUG),
        ({'debug': True, 'quiet': True}, logging.DEBUG),
    ],
)
def test_flags_select_level(isolated_root: logging.Logger, flags: dict[str, bool], level: int) -> None:
    """Root logger and managed handler share the level chosen by the flags."""
    setup_logger(**flags)

    (handler,) = _managed(isolated_root)
    assert isolated_root.level == level
    assert handler.level == level
    assert get_managed_handler() is handler


def test_repeated_setup_replaces_only_managed_handler(isolated_root: logging.Logger) -> None:
    """A second call swaps the managed handler and keeps foreign ones."""
    foreign = logging.NullHandler()
    isolated_root.addHandler(foreign)

    setup_logger()
    first = get_managed_handler()
    setup_logger(verbose=True)

    assert foreign in isolated_root.handlers
    current = get_managed_handler()
    assert current is not None
    assert _managed(isolated_root) == [current]
    assert current is not first
    assert current.name == logger_module.HANDLER_NAME


def test_redirected_stream_gets_plain_records() -> None:
    """Records written to a non-terminal stream carry no colour codes."""
    buffer = io.StringIO()
    setup_logger(verbose=True, stream=buffer)

    logging.getLogger('cluster_qis.protocols.engine').info('derived %d corrections', 8)

    handler = get_managed_handler()
    assert handler is not None
    assert not isinstance(handler.formatter, ColoredFormatter)
    assert buffer.getvalue() == 'INFO: derived 8 corrections\n'


def test_terminal_stream_is_coloured() -> None:
    """A TTY stream gets coloured records."""
    terminal = _Terminal()
    setup_logger(stream=terminal)

    logging.getLogger('cluster_qis.cli').error('unknown protocol')

    text = terminal.getvalue()
    assert text.startswith(ColoredFormatter.COLORS['ERROR'])
    assert text.rstrip('\n').endswith(ColoredFormatter.COLORS['RESET'])


def test_debug_format_names_the_source() -> None:
    """Debug records include the logger name and function."""
    buffer = io.StringIO()
    setup_logger(debug=True, stream=buffer)

    logging.getLogger('cluster_qis.channels').debug('searching')

    line = buffer.getvalue()
    assert line.startswith('DEBUG: searching | [cluster_qis.channels] test_debug_format_names_the_source:')


def test_log_operation_banners(caplog: pytest.LogCaptureFixture) -> None:
    """Wrapped calls are framed by Started and Finished banners of fixed width."""

    @log_operation('branch enumeration')
    def enumerate_branches() -> int:
        return 8

    with caplog.at_level(logging.DEBUG, logger='cluster_qis.utils.logger_module'):
        assert enumerate_branches() == 8

    started, finished = (record.getMessage() for record in caplog.records)
    assert 'Started branch enumeration.' in started
    assert started.startswith('*')
    assert 'Finished branch enumeration in' in finished
    assert finished.startswith('-')
    assert len(started) == len(finished) == 100


def test_long_operation_name_is_truncated(caplog: pytest.LogCaptureFixture) -> None:
    """Banners never grow past their width."""

    @log_operation('x' * 200)
    def noop() -> None:
        return None

    with caplog.at_level(logging.DEBUG, logger='cluster_qis.utils.logger_module'):
        noop()

    assert all(len(record.getMessage()) == 100 for record in caplog.records)
    assert all('...' in record.getMessage() for record in caplog.records)


def test_log_operation_propagates_exceptions(caplog: pytest.LogCaptureFixture) -> None:
    """Errors reach the caller and no Finished banner is logged."""

    @log_operation('failing search')
    def failing() -> None:
        msg = 'budget exceeded'
        raise RuntimeError(msg)

    with caplog.at_level(logging.DEBUG, logger='cluster_qis.utils.logger_module'), pytest.raises(RuntimeError, match='budget'):
        failing()

    assert not any('Finished' in record.getMessage() for record in caplog.records)
