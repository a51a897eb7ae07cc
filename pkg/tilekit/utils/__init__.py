# ruff: noqa: F401, F403

from .colors import *
from .export import *
from .ingest import *
from .logs import *

from .colors import __all__ as _colors_all
from .export import __all__ as _export_all
from .ingest import __all__ as _ingest_all
from .logs import __all__ as _logs_all

__all__ = [
    *_colors_all,
    *_export_all,
    *_ingest_all,
    *_logs_all
]
