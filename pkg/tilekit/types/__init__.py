# ruff: noqa: F401, F403

from .builtins import *
from .correlation import *
from .performance import *
from .rank import *
from .tile import *

from .builtins import __all__ as _builtins_all
from .correlation import __all__ as _correlation_all
from .performance import __all__ as _performance_all
from .rank import __all__ as _rank_all
from .tile import __all__ as _tile_all

__all__ = [
    *_builtins_all,
    *_correlation_all,
    *_performance_all,
    *_rank_all,
    *_tile_all
]
