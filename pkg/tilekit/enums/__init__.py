# ruff: noqa: F401, F403

from .base import *
from .other import *
from .score import *

from .base import __all__ as _base_all
from .other import __all__ as _other_all
from .score import __all__ as _score_all

__all__ = [
    *_base_all,
    *_other_all,
    *_score_all
]
