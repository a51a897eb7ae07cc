# ruff: noqa: F401, F403

from .main import *

from .main import __all__ as _main_all

__all__ = [
    *_main_all
]
