from __future__ import annotations

import numpy as np
from matplotlib.colors import Colormap, LinearSegmentedColormap, ListedColormap, hsv_to_rgb
from stgpytools import CustomKeyError, CustomValueError

from ..enums import TileKind

__all__ = [
    'SEQUENTIAL_ANCHORS',
    'DIVERGING_ANCHORS',
    'CATEGORICAL_PALETTE',

    'get_colormap',
    'default_colormap',

    'categorical_colors'
]

RGB = tuple[int, int, int]

SEQUENTIAL_ANCHORS: tuple[RGB, ...] = (
    (68, 1, 84), (72, 40, 120), (62, 74, 137), (49, 104, 142), (38, 130, 142),
    (31, 158, 137), (53, 183, 121), (109, 205, 89), (180, 222, 44), (253, 231, 37)
)
"""Dark purple to yellow, for values in [0, 1]."""

DIVERGING_ANCHORS: tuple[RGB, ...] = (
    (5, 48, 97), (33, 102, 172), (67, 147, 195), (146, 197, 222), (209, 229, 240),
    (247, 247, 247), (253, 219, 199), (244, 165, 130), (214, 96, 77), (178, 24, 43), (103, 0, 31)
)
"""Blue through white to red, for correlations in [-1, 1]."""

RANK_ANCHORS: tuple[RGB, ...] = (
    (255, 255, 229), (247, 252, 185), (217, 240, 163), (173, 221, 142), (120, 198, 121),
    (65, 171, 93), (35, 132, 67), (0, 104, 55), (0, 69, 41)
)
"""Light (rank 1) to dark (rank N)."""

CATEGORICAL_PALETTE: tuple[RGB, ...] = (
    (31, 119, 180), (255, 127, 14), (44, 160, 44), (214, 39, 40), (148, 103, 189), (140, 86, 75),
    (227, 119, 194), (127, 127, 127), (188, 189, 34), (23, 190, 207), (174, 199, 232), (255, 187, 120),
    (152, 223, 138), (255, 152, 150), (197, 176, 213), (196, 156, 148), (247, 182, 210), (199, 199, 199),
    (219, 219, 141), (158, 218, 229), (57, 59, 121), (82, 84, 163), (107, 110, 207), (156, 158, 222),
    (99, 121, 57), (140, 162, 82), (181, 207, 107), (206, 219, 156), (140, 109, 49), (189, 158, 57),
    (231, 186, 82), (231, 203, 148)
)
"""32 distinguishable colours for entity maps."""

_GOLDEN = 0.6180339887498949

_ANCHORS = {
    'sequential': SEQUENTIAL_ANCHORS,
    'diverging': DIVERGING_ANCHORS,
    'ranks': RANK_ANCHORS
}


def _unit(colors: tuple[RGB, ...]) -> list[tuple[float, float, float]]:
    return [(r / 255, g / 255, b / 255) for r, g, b in colors]


def get_colormap(name: str, levels: int = 256) -> Colormap:
    """
    One of the embedded colormaps, ``sequential``, ``diverging`` or ``ranks``,
    linearly interpolated between its anchors into ``levels`` entries.
    """

    try:
        anchors = _ANCHORS[name]
    except KeyError:
        raise CustomKeyError(
            'Unknown colormap "{name}", pick one of {names}!', get_colormap, name=name, names=list(_ANCHORS)
        ) from None

    return LinearSegmentedColormap.from_list(f'tilekit-{name}', _unit(anchors), N=levels)


def default_colormap(kind: TileKind) -> str:
    if kind in {TileKind.CORRELATION, TileKind.BEHAVIOR, TileKind.SKILL}:
        return 'diverging'

    if kind is TileKind.RANKING:
        return 'ranks'

    return 'sequential'


def _extra_colors(count: int) -> list[tuple[float, float, float]]:
    """Colours past the palette, stepping the hue by the golden ratio through three saturation/value levels."""

    levels = ((0.75, 0.85), (0.95, 0.6), (0.45, 0.95))
    hsv = np.array([((k * _GOLDEN) % 1.0, *levels[k % len(levels)]) for k in range(count)], np.float64)

    return [(r, g, b) for r, g, b in hsv_to_rgb(hsv).tolist()]


def categorical_colors(count: int) -> ListedColormap:
    """
    ``count`` distinct colours: the palette first, then colours spread around the hue circle.

    The first colours never depend on ``count``.
    """

    if count < 1:
        raise CustomValueError('At least one colour must be requested, got {count}!', categorical_colors, count=count)

    colors = _unit(CATEGORICAL_PALETTE[:count])

    if count > len(CATEGORICAL_PALETTE):
        colors += _extra_colors(count - len(CATEGORICAL_PALETTE))

    return ListedColormap(colors, 'tilekit-entities')
