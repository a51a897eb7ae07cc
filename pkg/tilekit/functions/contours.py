from __future__ import annotations

import math
from typing import Iterable, NamedTuple

import numpy as np
from contourpy import LineType, contour_generator
from stgpytools import CustomValueError

from ..types import FloatArray, ScalarTile

__all__ = [
    'Polyline',

    'iso_contours'
]


class Polyline(NamedTuple):
    level: float
    points: FloatArray
    """(n, 2) array of (a, b) vertices."""

    @property
    def closed(self) -> bool:
        return len(self.points) > 2 and bool((self.points[0] == self.points[-1]).all())


def iso_contours(tile: ScalarTile, levels: Iterable[float]) -> list[Polyline]:
    """
    Marching-squares iso-lines of a tile, in (a, b) coordinates.

    Vertices lie on cell edges at the linearly interpolated crossing of the level.
    Cells touching an undefined value are skipped.
    """

    levels = [float(level) for level in levels]

    if not all(math.isfinite(level) for level in levels):
        raise CustomValueError('Contour levels must be finite, got {levels}!', iso_contours, levels=levels)

    axis = tile.grid.axis

    generator = contour_generator(
        axis, axis, np.ma.masked_invalid(tile.values), line_type=LineType.Separate, corner_mask=False
    )

    return [
        Polyline(level, np.asarray(points, np.float64))
        for level in levels
        for points in generator.lines(level)
        if len(points) >= 2
    ]
