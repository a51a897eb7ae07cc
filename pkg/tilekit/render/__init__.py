# ruff: noqa: F401, F403

from .base import *
from .entity_map import *
from .heatmap import *
from .report import *
from .roc import *

from .base import __all__ as _base_all
from .entity_map import __all__ as _entity_map_all
from .heatmap import __all__ as _heatmap_all
from .report import __all__ as _report_all
from .roc import __all__ as _roc_all

__all__ = [
    *_base_all,
    *_entity_map_all,
    *_heatmap_all,
    *_report_all,
    *_roc_all
]
