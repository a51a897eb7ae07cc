from __future__ import annotations

import logging

import numpy as np

from ..enums import TileKind
from ..exceptions import EmptyEntitySetError, RankOutOfRangeError
from ..types import EntitySet, EntityTile, FloatArray, Grid, IntArray, RankCube, RankStats, ScalarTile
from .parallel import WorkerConfigT, map_row_chunks
from .scores import score_rows

__all__ = [
    'competition_ranks',

    'ranking_cube',

    'rank_tile',

    'entity_tile',

    'area_share',

    'rank_stats', 'rank_stats_all'
]

log = logging.getLogger(__name__)


def competition_ranks(scores: FloatArray) -> IntArray:
    """
    Competition ranks along the first axis, highest score first.

    Undefined scores rank below every defined one and tie among themselves.
    Equal scores share the smallest rank of their group.
    """

    key = -scores
    key[np.isnan(key)] = np.inf

    order = np.argsort(key, axis=0, kind='stable')
    ordered = np.take_along_axis(key, order, axis=0)

    is_new = np.ones(ordered.shape, np.bool_)
    is_new[1:] = ordered[1:] != ordered[:-1]

    positions = np.where(is_new, np.arange(len(key)).reshape((-1, ) + (1, ) * (key.ndim - 1)), 0)

    np.maximum.accumulate(positions, axis=0, out=positions)

    ranks = np.empty_like(positions)
    np.put_along_axis(ranks, order, positions + 1, axis=0)

    return ranks


def ranking_cube(entities: EntitySet, g: Grid = Grid(), workers: WorkerConfigT = None) -> RankCube:
    """
    Rank every entity at every grid node.

    Entities are sorted by id first, so the cube does not depend on the input order.

    :raises EmptyEntitySetError:    No entity.
    """

    if not len(entities):
        raise EmptyEntitySetError(ranking_cube)

    entities = entities.sorted()
    matrix, axis = entities.matrix, g.axis

    dtype = np.min_scalar_type(len(entities))

    def _chunk(rows: slice) -> IntArray:
        return competition_ranks(score_rows(matrix, axis, axis[rows])).astype(dtype)

    log.debug('ranking %d entities on a %dx%d grid', len(entities), g.size, g.size)

    ranks = np.concatenate(
        map_row_chunks(_chunk, g.size, 3 * len(entities) * g.size, workers, 'Ranking cube'), axis=1
    )

    return RankCube(g, entities.ids, ranks)


def rank_tile(cube: RankCube, entity_id: str) -> ScalarTile:
    """
    Ranks of one entity over the Tile.

    :raises UnknownEntityError:     ``entity_id`` is not part of the cube.
    """

    return ScalarTile(
        cube.grid, cube.ranks_of(entity_id, rank_tile), TileKind.RANKING,
        {'entity_id': entity_id, 'entities': len(cube)}
    )


def entity_tile(cube: RankCube, rank: int, workers: WorkerConfigT = None) -> EntityTile:
    """
    The entity holding ``rank`` at every node.

    Within a tie group covering ``rank``, members are taken in id order:
    the first member for the group's own rank, the next one for the following rank, and so on.

    :raises RankOutOfRangeError:    ``rank`` is not in [1, N].
    """

    if not 1 <= rank <= len(cube):
        raise RankOutOfRangeError(entity_tile, rank, len(cube))

    def _chunk(rows: slice) -> IntArray:
        ranks = cube.ranks[:, rows]

        if rank == 1:
            return np.argmin(ranks, axis=0)

        return np.argsort(ranks, axis=0, kind='stable')[rank - 1]

    g = cube.grid

    indices = np.concatenate(map_row_chunks(_chunk, g.size, 2 * len(cube) * g.size, workers), axis=0)

    return EntityTile(g, indices, cube.entity_ids, rank, {'entities': len(cube)})


def area_share(tile: EntityTile) -> dict[str, float]:
    """Fraction of the grid nodes held by each entity present, in id order."""

    total = tile.indices.size

    return {k: c / total for k, c in sorted(tile.counts().items())}


def rank_stats(cube: RankCube, entity_id: str) -> RankStats:
    """
    Min, max and mean rank of one entity over the Tile.

    :raises UnknownEntityError:     ``entity_id`` is not part of the cube.
    """

    ranks = cube.ranks_of(entity_id, rank_stats)

    return RankStats(entity_id, int(ranks.min()), int(ranks.max()), float(ranks.mean(dtype=np.float64)))


def rank_stats_all(cube: RankCube) -> list[RankStats]:
    """Stats of every entity, best first: by max rank, then mean rank, then id."""

    return sorted(
        (rank_stats(cube, k) for k in cube.entity_ids), key=lambda s: (s.max_rank, s.mean_rank, s.entity_id)
    )
