from __future__ import annotations

import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure
from matplotlib.patches import Patch

from ..exceptions import GridMismatchError
from ..types import BoolTile, EntityTile
from ..utils import categorical_colors
from .base import RenderOptions, draw_corner_labels, draw_field, draw_mask, new_figure

__all__ = [
    'LEGEND_ROWS',

    'entity_colors',

    'render_entity_map'
]

LEGEND_ROWS = 16
"""Legend entries per column before a new column is started."""


def entity_colors(count: int) -> ListedColormap:
    """One distinct colour per entity, at least one."""

    return categorical_colors(max(count, 1))


def render_entity_map(tile: EntityTile, opts: RenderOptions = RenderOptions(), hatch: BoolTile | None = None) -> Figure:
    """
    Draw which entity holds the tile's rank at every cell.

    Only the entities present get a colour, assigned in lexicographic order of their ids,
    which is also the legend order.
    """

    if hatch is not None:
        GridMismatchError.check(render_entity_map, tile.grid, hatch.grid)

    present = tile.distinct
    slot = {eid: k for k, eid in enumerate(present)}

    remap = np.array([slot.get(eid, 0) for eid in tile.entity_ids], np.float64)
    field = remap[tile.indices.astype(np.intp)]

    cmap = entity_colors(len(present))

    title = 'entity' if tile.rank is None else f'entity at rank {tile.rank}'
    fig, ax = new_figure(opts, title)

    draw_field(ax, tile.grid, field, cmap, -0.5, len(present) - 0.5, opts)

    if hatch is not None:
        draw_mask(ax, tile.grid, hatch.mask, opts)

    draw_corner_labels(ax, opts)

    handles = [Patch(facecolor=cmap(k), edgecolor='none', label=eid) for k, eid in enumerate(present)]

    fig.legend(
        handles=handles, loc='outside right upper', fontsize=7, frameon=False,
        ncols=max(1, -(-len(handles) // LEGEND_ROWS))
    )

    return fig
