from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np
from stgpytools import CustomValueError

from ..enums import TileKind
from ..exceptions import GridMismatchError
from .builtins import BoolArray, FloatArray, IntArray, MetadataT
from .performance import Importance, ImportanceT

__all__ = [
    'DEFAULT_GRID_SIZE',

    'Grid', 'GridPoint',

    'ScalarTile',
    'BoolTile',
    'EntityTile'
]

DEFAULT_GRID_SIZE = 2001
"""Number of linearly spaced values per axis."""


class GridPoint(NamedTuple):
    """A grid node: row index over b, column index over a, and its coordinates."""

    i: int
    j: int
    importance: Importance
    distance: float
    """Euclidean distance between the requested importance and the node."""


@dataclass(frozen=True, slots=True)
class Grid:
    """
    Discretisation of the Tile.

    Both axes hold ``size`` linearly spaced values ``k / (size - 1)``, so 0 and 1 are always nodes,
    and 0.5 is a node whenever ``size`` is odd.
    """

    size: int = DEFAULT_GRID_SIZE

    def __post_init__(self) -> None:
        if isinstance(self.size, bool) or not isinstance(self.size, int) or self.size < 2:
            raise CustomValueError('Grid size must be an integer >= 2, got {size}!', Grid, size=self.size)

    @property
    def axis(self) -> FloatArray:
        """Axis values, shared by a (columns) and b (rows)."""

        axis = np.arange(self.size, dtype=np.float64) / (self.size - 1)
        axis.setflags(write=False)

        return axis

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)

    @property
    def cell_size(self) -> float:
        return 1.0 / (self.size - 1)

    def index_of(self, x: float) -> int:
        """Index of the node closest to ``x``."""

        return min(max(int(math.floor(x * (self.size - 1) + 0.5)), 0), self.size - 1)

    def importance_at(self, i: int, j: int) -> Importance:
        return Importance(j / (self.size - 1), i / (self.size - 1))

    def snap(self, w: ImportanceT) -> GridPoint:
        """Nearest grid node to an importance."""

        w = Importance.from_param(w, self.snap)

        i, j = self.index_of(w.b), self.index_of(w.a)
        node = self.importance_at(i, j)

        return GridPoint(i, j, node, math.hypot(node.a - w.a, node.b - w.b))

    def mesh(self) -> tuple[FloatArray, FloatArray]:
        """(A, B) arrays with ``A[i, j] = a_j`` and ``B[i, j] = b_i``."""

        axis = self.axis

        return np.broadcast_to(axis[None, :], self.shape), np.broadcast_to(axis[:, None], self.shape)


def _frozen_array(values: Any, dtype: Any, grid: Grid, cls: type) -> np.ndarray[Any, Any]:
    array = np.array(values, dtype=dtype, copy=True)

    if array.shape != grid.shape:
        raise CustomValueError(
            'Tile values must have shape {expected}, got {shape}!', cls, expected=grid.shape, shape=array.shape
        )

    array.setflags(write=False)

    return array


@dataclass(frozen=True, eq=False)
class ScalarTile:
    """
    A G x G real field over the Tile.

    ``values[i, j]`` holds the value at ``(a_j, b_i)``; NaN marks undefined entries.
    The array is copied and made read-only on construction.
    """

    grid: Grid
    values: FloatArray
    kind: TileKind = TileKind.VALUE
    metadata: MetadataT = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'values', _frozen_array(self.values, np.float64, self.grid, ScalarTile))
        object.__setattr__(self, 'kind', TileKind(self.kind))

    @property
    def defined(self) -> BoolArray:
        return ~np.isnan(self.values)

    @property
    def entity_id(self) -> str | None:
        return self.metadata.get('entity_id')

    def at(self, i: int, j: int) -> float:
        return float(self.values[i, j])

    def sample(self, w: ImportanceT) -> float:
        """Value at the grid node nearest to ``w``."""

        point = self.grid.snap(w)

        return self.at(point.i, point.j)

    def value_range(self) -> tuple[float, float]:
        """(min, max) over defined entries, (nan, nan) when nothing is defined."""

        if not self.defined.any():
            return (math.nan, math.nan)

        return (float(np.nanmin(self.values)), float(np.nanmax(self.values)))

    def replace(self, **metadata: Any) -> ScalarTile:
        """Same values, metadata updated."""

        return ScalarTile(self.grid, self.values, self.kind, self.metadata | metadata)

    def check_grid(self, *others: ScalarTile | BoolTile | EntityTile, func: Any = None) -> None:
        GridMismatchError.check(func or self.check_grid, self.grid, *(o.grid for o in others))


@dataclass(frozen=True, eq=False)
class BoolTile:
    """A G x G boolean mask over the Tile, laid out like :py:class:`ScalarTile`."""

    grid: Grid
    mask: BoolArray
    kind: TileKind = TileKind.HATCH
    metadata: MetadataT = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'mask', _frozen_array(self.mask, np.bool_, self.grid, BoolTile))
        object.__setattr__(self, 'kind', TileKind(self.kind))

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.mask))

    def any(self) -> bool:
        return bool(self.mask.any())

    def as_scalar(self) -> ScalarTile:
        return ScalarTile(self.grid, self.mask.astype(np.float64), self.kind, dict(self.metadata))


@dataclass(frozen=True, eq=False)
class EntityTile:
    """
    The entity holding a given rank at every node.

    Cells are stored as indices into ``entity_ids``.
    """

    grid: Grid
    indices: IntArray
    entity_ids: tuple[str, ...]
    rank: int | None = None
    metadata: MetadataT = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'entity_ids', tuple(self.entity_ids))

        dtype = np.min_scalar_type(max(len(self.entity_ids) - 1, 0))
        indices = _frozen_array(self.indices, dtype, self.grid, EntityTile)

        if indices.size and (int(indices.min()) < 0 or int(indices.max()) >= len(self.entity_ids)):
            raise CustomValueError('Entity tile cells must index the entity ids!', EntityTile)

        object.__setattr__(self, 'indices', indices)

    @property
    def kind(self) -> TileKind:
        return TileKind.ENTITY

    @property
    def cells(self) -> np.ndarray[Any, np.dtype[np.object_]]:
        """G x G array of entity ids."""

        return np.array(self.entity_ids, dtype=object)[self.indices]

    def entity_at(self, i: int, j: int) -> str:
        return self.entity_ids[int(self.indices[i, j])]

    def counts(self) -> dict[str, int]:
        """Number of cells held by each entity that holds at least one."""

        counts = np.bincount(self.indices.ravel(), minlength=len(self.entity_ids))

        return {eid: int(c) for eid, c in zip(self.entity_ids, counts) if c}

    @property
    def distinct(self) -> tuple[str, ...]:
        """Entities present on the tile, in lexicographic order."""

        return tuple(sorted(self.counts()))

    def mask_of(self, entity_id: str) -> BoolArray:
        if entity_id not in self.entity_ids:
            return np.zeros(self.grid.shape, np.bool_)

        return self.indices == self.entity_ids.index(entity_id)
