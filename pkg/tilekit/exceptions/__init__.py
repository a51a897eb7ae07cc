# ruff: noqa: F401, F403

from .base import *
from .file import *
from .generic import *
from .score import *

from .base import __all__ as _base_all
from .file import __all__ as _file_all
from .generic import __all__ as _generic_all
from .score import __all__ as _score_all

__all__ = [
    *_base_all,
    *_file_all,
    *_generic_all,
    *_score_all
]
