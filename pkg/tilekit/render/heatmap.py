from __future__ import annotations

import logging
import math
from typing import Iterable

from matplotlib.figure import Figure

from ..enums import TileKind
from ..exceptions import GridMismatchError
from ..functions import iso_contours
from ..types import BoolTile, ScalarTile
from ..utils import default_colormap, get_colormap
from .base import RenderOptions, draw_corner_labels, draw_field, draw_mask, new_figure

__all__ = [
    'value_limits',

    'render_heatmap'
]

log = logging.getLogger(__name__)

CONTOUR_COLOR = '#1f4e9c'


def value_limits(tile: ScalarTile) -> tuple[float, float]:
    """Colour scale limits for a tile kind."""

    if tile.kind.is_unit_interval:
        return (0.0, 1.0)

    if tile.kind in {TileKind.CORRELATION, TileKind.BEHAVIOR, TileKind.SKILL}:
        return (-1.0, 1.0)

    low, high = tile.value_range()

    if math.isnan(low):
        return (0.0, 1.0)

    if low == high:
        return (low - 0.5, high + 0.5)

    return (low, high)


def render_heatmap(
    tile: ScalarTile,
    hatch: BoolTile | None = None,
    contours: Iterable[float] | None = None,
    opts: RenderOptions = RenderOptions(),
    boundaries: BoolTile | None = None
) -> Figure:
    """
    Draw a scalar tile as a filled heatmap, a along the horizontal axis and b upwards.

    :param hatch:       Cells to hatch, usually where a no-skill classifier does better.
    :param contours:    Iso-value levels, ``opts.contour_levels`` when None.
                        Levels outside the open value range of the tile are not drawn.
    :param boundaries:  Cells outlined in white, usually the borders of an entity tile.

    :raises GridMismatchError:  An overlay does not share the tile's grid.
    """

    func = render_heatmap

    GridMismatchError.check(func, tile.grid, *(o.grid for o in (hatch, boundaries) if o is not None))

    vmin, vmax = value_limits(tile)
    cmap = get_colormap(opts.colormap or default_colormap(tile.kind))

    title = str(tile.kind) if tile.entity_id is None else f'{tile.kind}: {tile.entity_id}'

    fig, ax = new_figure(opts, title)

    mappable = draw_field(ax, tile.grid, tile.values, cmap, vmin, vmax, opts)
    fig.colorbar(mappable, ax=ax, shrink=0.85)

    low, high = tile.value_range()
    levels = [level for level in (opts.contour_levels if contours is None else contours) if low < level < high]

    for line in iso_contours(tile, levels):
        ax.plot(line.points[:, 0], line.points[:, 1], color=CONTOUR_COLOR, linewidth=0.7)

    if levels:
        log.debug('%s: %d contour levels drawn', title, len(levels))

    if boundaries is not None:
        draw_mask(ax, tile.grid, boundaries.mask, opts, hatch=False)

    if hatch is not None:
        draw_mask(ax, tile.grid, hatch.mask, opts)

    draw_corner_labels(ax, opts)

    return fig
