from __future__ import annotations

from stgpytools import CustomError, CustomIndexError, CustomKeyError, CustomRuntimeError, CustomValueError

__all__ = [
    'CustomError',

    'CustomValueError',
    'CustomIndexError',
    'CustomKeyError',
    'CustomRuntimeError'
]
