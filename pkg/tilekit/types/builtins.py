from __future__ import annotations

from typing import Any, TypeAlias

import numpy as np
import numpy.typing as npt
from stgpytools import FilePathType, FuncExceptT, KwargsT, SingleOrArr, SupportsString, T

__all__ = [
    'T',

    'FuncExceptT',

    'FilePathType',

    'KwargsT',

    'SingleOrArr',

    'SupportsString',

    'FloatArray', 'IntArray', 'BoolArray',

    'MetadataT'
]

FloatArray: TypeAlias = npt.NDArray[np.float64]
"""Array of 64-bit floats, NaN marking undefined values."""

IntArray: TypeAlias = npt.NDArray[np.integer[Any]]

BoolArray: TypeAlias = npt.NDArray[np.bool_]

MetadataT: TypeAlias = dict[str, Any]
"""JSON-serialisable metadata attached to tiles and reports."""
