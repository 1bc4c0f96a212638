"""Console logging for the command line tool and the long-running checks."""

import logging
import sys
import time
from collections.abc import Callable
from functools import wraps
from typing import IO, Any

_HANDLER_STATE: dict[str, logging.Handler | None] = {'managed': None}

HANDLER_NAME = 'cluster_qis.console'
DETAILED_FORMAT = '%(levelname)s: %(message)s | [%(name)s] %(funcName)s: %(lineno)d'
SIMPLE_FORMAT = '%(levelname)s: %(message)s'


class ColoredFormatter(logging.Formatter):
    """Wrap records in ANSI colour codes chosen by level."""

    COLORS = {
        'ERROR': '\033[38;5;196m',
        'WARNING': '\033[38;5;208m',
        'INFO': '\033[38;5;34m',
        'DEBUG': '\033[38;5;27m',
        'RESET': '\033[0m',
    }

    def format(self, record: logging.LogRecord) -> str:
        """Return the formatted record between a colour code and a reset.

        Returns
        -------
        str
            Colourised log line.
        """
        log_msg = super().format(record)
        color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
        return f'{color}{log_msg}{self.COLORS["RESET"]}'


_BANNER_WIDTH = 100
_ELLIPSIS = '...'


def _format_operation_banner(message: str, *, fill_char: str) -> str:
    """Centre ``message`` in a fixed-width line of ``fill_char``.

    Returns
    -------
    str
        Banner line, truncated with an ellipsis when the message is too long.
    """
    char = (fill_char or '-')[0]
    room = _BANNER_WIDTH - 4
    if len(message) > room:
        message = message[: room - len(_ELLIPSIS)] + _ELLIPSIS
    return f' {message} '.center(_BANNER_WIDTH, char)


def _is_terminal(stream: IO[str]) -> bool:
    isatty = getattr(stream, 'isatty', None)
    return bool(isatty and isatty())


def setup_logger(
    *,
    debug: bool = False,
    verbose: bool = False,
    quiet: bool = False,
    stream: IO[str] | None = None,
) -> None:
    """Install the managed stderr handler on the root logger.

    Calling this again replaces the handler installed by the previous call;
    handlers added by anything else are left alone. Reports are printed on
    stdout, so logging never mixes with them.
    """
    root = logging.getLogger()

    if debug:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    elif quiet:
        level = logging.ERROR
    else:
        level = logging.WARNING
    root.setLevel(level)

    for handler in list(root.handlers):
        if getattr(handler, 'cluster_qis_managed', False):
            root.removeHandler(handler)

    stream = stream if stream is not None else sys.stderr
    handler = logging.StreamHandler(stream)
    handler.setLevel(level)

    fmt = DETAILED_FORMAT if debug else SIMPLE_FORMAT
    formatter = ColoredFormatter(fmt) if _is_terminal(stream) else logging.Formatter(fmt)
    handler.setFormatter(formatter)
    handler.set_name(HANDLER_NAME)
    handler.cluster_qis_managed = True  # type: ignore[attr-defined]
    root.addHandler(handler)
    _HANDLER_STATE['managed'] = handler


def log_operation(operation: str) -> Any:
    """Log DEBUG banners before and after a call, with the elapsed time.

    Returns
    -------
    Callable[..., Any]
        Decorator for the target callable.
    """
    logger = logging.getLogger(__name__)

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            logger.debug(_format_operation_banner(f'Started {operation}.', fill_char='*'), stacklevel=2)
            started = time.perf_counter()
            result = func(*args, **kwargs)
            elapsed = time.perf_counter() - started
            logger.debug(
                _format_operation_banner(f'Finished {operation} in {elapsed:.3f} s.', fill_char='-'),
                stacklevel=2,
            )
            return result

        return wrapper

    return decorator


def get_managed_handler() -> logging.Handler | None:
    """Return the handler installed by :func:`setup_logger`.

    Returns
    -------
    logging.Handler | None
        Managed handler, or ``None`` before the first call.
    """
    return _HANDLER_STATE['managed']
