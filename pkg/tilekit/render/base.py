from __future__ import annotations

import io
from dataclasses import dataclass, field

import matplotlib
import numpy as np
from matplotlib.axes import Axes
from matplotlib.cm import ScalarMappable
from matplotlib.colors import Colormap
from matplotlib.figure import Figure
from stgpytools import CustomValueError, FilePathType, SPath, check_perms

from ..enums import NamedScore
from ..types import FloatArray, FuncExceptT, Grid

__all__ = [
    'RenderOptions',

    'new_figure',

    'draw_field',
    'draw_mask',
    'draw_corner_labels',

    'figure_to_svg',
    'save_figure'
]

_SVG_RC = {
    'svg.hashsalt': 'tilekit',
    'svg.fonttype': 'path',
    'path.simplify': False
}


@dataclass(frozen=True)
class RenderOptions:
    """How tiles and plots are drawn."""

    colormap: str | None = None
    """Embedded colormap name, None picks one from the tile kind."""

    contour_levels: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    """Iso-value levels; levels outside the tile's value range are skipped."""

    hatch_density: int = 3
    """Number of strokes in the hatch pattern, higher is denser."""

    size: tuple[int, int] = (640, 560)
    """Figure size in pixels."""

    dpi: int = 100

    labels: tuple[NamedScore, ...] = tuple(NamedScore)
    """Named scores written at their place on the Tile."""

    max_cells: int = 512
    """Grids larger than this are downsampled to ``max_cells`` x ``max_cells`` before drawing."""

    png: bool = False
    """Also write a PNG next to every SVG."""

    title: str | None = None

    extra: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if min(self.size) <= 0 or self.dpi <= 0:
            raise CustomValueError('Figure size and dpi must be > 0, got {size} at {dpi}!', RenderOptions,
                                   size=self.size, dpi=self.dpi)

        if self.hatch_density < 1:
            raise CustomValueError('hatch_density must be >= 1!', RenderOptions)

        if self.max_cells < 2:
            raise CustomValueError('max_cells must be >= 2!', RenderOptions)

        object.__setattr__(self, 'labels', tuple(NamedScore(n) for n in self.labels))

    @property
    def hatch(self) -> str:
        return '/' * self.hatch_density

    @property
    def figsize(self) -> tuple[float, float]:
        return (self.size[0] / self.dpi, self.size[1] / self.dpi)


def new_figure(opts: RenderOptions, title: str | None = None) -> tuple[Figure, Axes]:
    fig = Figure(figsize=opts.figsize, dpi=opts.dpi, layout='constrained')
    ax = fig.add_subplot()

    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_aspect('equal')
    ax.set_xlabel('a')
    ax.set_ylabel('b')

    if opts.title or title:
        ax.set_title(opts.title or title or '')

    return fig, ax


def _sample_indices(grid: Grid, opts: RenderOptions) -> np.ndarray:
    if grid.size <= opts.max_cells:
        return np.arange(grid.size)

    return np.unique(np.round(np.linspace(0, grid.size - 1, opts.max_cells)).astype(np.intp))


def _edges(centers: FloatArray) -> FloatArray:
    mids = (centers[1:] + centers[:-1]) / 2
    edges = np.concatenate([[centers[0] - (mids[0] - centers[0])], mids, [centers[-1] + (centers[-1] - mids[-1])]])

    return np.clip(edges, 0.0, 1.0)


def draw_field(
    ax: Axes, grid: Grid, values: FloatArray, cmap: Colormap, vmin: float, vmax: float, opts: RenderOptions
) -> ScalarMappable:
    """
    Fill every cell with its colour, cells being centred on the grid nodes.

    Small grids get one vector quad per cell, large ones an embedded raster of at most ``max_cells``
    squared sampled nodes.
    """

    cmap = cmap.with_extremes(bad='#d9d9d9')
    masked = np.ma.masked_invalid(values)

    if grid.size <= opts.max_cells:
        edges = _edges(grid.axis)

        return ax.pcolormesh(edges, edges, masked, cmap=cmap, vmin=vmin, vmax=vmax, shading='flat')

    index = _sample_indices(grid, opts)
    half = 0.5 / (len(index) - 1)

    return ax.imshow(
        masked[np.ix_(index, index)], cmap=cmap, vmin=vmin, vmax=vmax, origin='lower',
        extent=(-half, 1 + half, -half, 1 + half), interpolation='nearest', resample=False
    )


def draw_mask(
    ax: Axes, grid: Grid, mask: np.ndarray, opts: RenderOptions, *, hatch: bool = True, color: str = 'white'
) -> None:
    """Hatch the cells of a mask, or outline them when ``hatch`` is False."""

    if not mask.any():
        return

    index = _sample_indices(grid, opts)
    sub = mask[np.ix_(index, index)].astype(np.float64)
    axis = grid.axis[index]

    if hatch:
        ax.contourf(axis, axis, sub, levels=[0.5, 1.5], hatches=[opts.hatch], colors='none')
    else:
        ax.contour(axis, axis, sub, levels=[0.5], colors=color, linewidths=0.6)


_PLACEMENT = {
    NamedScore.TNR: ('left', 'bottom'),
    NamedScore.TPR: ('right', 'top'),
    NamedScore.NPV: ('left', 'top'),
    NamedScore.PPV: ('right', 'bottom'),
    NamedScore.ACCURACY: ('center', 'center'),
    NamedScore.F1: ('right', 'center')
}


def draw_corner_labels(ax: Axes, opts: RenderOptions) -> None:
    inset = 0.015

    for score in opts.labels:
        a, b = score.importance
        ha, va = _PLACEMENT[score]

        x = a + (inset if ha == 'left' else -inset if ha == 'right' else 0.0)
        y = b + (inset if va == 'bottom' else -inset if va == 'top' else 0.0)

        ax.text(
            x, y, score.label, ha=ha, va=va, fontsize=8,
            bbox={'boxstyle': 'round,pad=0.2', 'facecolor': 'white', 'edgecolor': 'none', 'alpha': 0.8}
        )


def figure_to_svg(fig: Figure) -> bytes:
    """Byte-stable SVG document of a figure."""

    buffer = io.BytesIO()

    with matplotlib.rc_context(_SVG_RC):
        fig.savefig(buffer, format='svg', metadata={'Date': None})

    return buffer.getvalue()


def save_figure(
    fig: Figure, path: FilePathType, opts: RenderOptions | None = None, func: FuncExceptT | None = None
) -> list[SPath]:
    """Write a figure as SVG, plus PNG when ``opts.png`` is set. Returns the written paths."""

    func = func or save_figure

    out_path = SPath(str(path)).resolve().with_suffix('.svg')
    out_path.parent.mkdir(parents=True, exist_ok=True)

    check_perms(out_path, 'w+', func=func)

    out_path.write_bytes(figure_to_svg(fig))
    written = [out_path]

    if opts is not None and opts.png:
        png_path = out_path.with_suffix('.png')

        with matplotlib.rc_context(_SVG_RC):
            fig.savefig(png_path, format='png', metadata={'Software': None})

        written.append(png_path)

    return written
