# ruff: noqa: F401, F403

from .behavior import *
from .contours import *
from .correlation import *
from .parallel import *
from .progress import *
from .ranking import *
from .recover import *
from .scores import *
from .select import *
from .tiles import *

from .behavior import __all__ as _behavior_all
from .contours import __all__ as _contours_all
from .correlation import __all__ as _correlation_all
from .parallel import __all__ as _parallel_all
from .progress import __all__ as _progress_all
from .ranking import __all__ as _ranking_all
from .recover import __all__ as _recover_all
from .scores import __all__ as _scores_all
from .select import __all__ as _select_all
from .tiles import __all__ as _tiles_all

__all__ = [
    *_behavior_all,
    *_contours_all,
    *_correlation_all,
    *_parallel_all,
    *_progress_all,
    *_ranking_all,
    *_recover_all,
    *_scores_all,
    *_select_all,
    *_tiles_all
]
