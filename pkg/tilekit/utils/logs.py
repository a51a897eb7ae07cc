from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler

from ..functions import set_progress_enabled

__all__ = [
    'setup_logging'
]


def setup_logging(verbosity: int = 0) -> logging.Logger:
    """
    Send the package's log records to stderr through rich.

    :param verbosity:   -1 shows errors only and silences progress bars, 0 warnings, 1 info, 2 and above debug.

    :return:            The package logger.
    """

    level = {-1: logging.ERROR, 0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)

    if verbosity < 0:
        level = logging.ERROR

    logger = logging.getLogger('tilekit')

    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)

    handler = RichHandler(console=Console(stderr=True), show_path=False, show_time=False, markup=False)
    handler.setFormatter(logging.Formatter('%(message)s'))

    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False

    set_progress_enabled(verbosity >= 0)

    return logger
