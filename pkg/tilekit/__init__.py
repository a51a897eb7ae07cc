# ruff: noqa: F401, F403

from .enums import *
from .exceptions import *
from .functions import *
from .types import *
from .utils import *
from .render import *
