from __future__ import annotations

import logging

import numpy as np
from stgpytools import CustomValueError

from ..enums import SelectionStrategy
from ..exceptions import EmptyEntitySetError
from ..types import EntityTile, ImportanceT, RankCube, ScalarTile, Selection, SelectionStage
from .ranking import rank_stats_all

__all__ = [
    'select_at',
    'select_by_reference',
    'select_minimax'
]

log = logging.getLogger(__name__)


def select_minimax(cube: RankCube) -> Selection:
    """
    Select the entity whose worst rank over the Tile is the best.

    Ties are broken by the mean rank, then by id.

    :raises EmptyEntitySetError:    The cube holds no entity.
    """

    if not len(cube):
        raise EmptyEntitySetError(select_minimax)

    stats = rank_stats_all(cube)

    best_max = stats[0].max_rank
    survivors = [s for s in stats if s.max_rank == best_max]

    best_mean = min(s.mean_rank for s in survivors)
    finalists = [s for s in survivors if s.mean_rank == best_mean]

    stages = (
        SelectionStage('max rank', tuple(sorted(s.entity_id for s in survivors)), float(best_max)),
        SelectionStage('mean rank', tuple(sorted(s.entity_id for s in finalists)), best_mean),
        SelectionStage('entity id', (min(s.entity_id for s in finalists), ))
    )

    return Selection(
        SelectionStrategy.MINIMAX, stages[-1].survivors[0], stages,
        details={'stats': [s.as_dict() for s in survivors]}
    )


def select_at(cube: RankCube, w: ImportanceT) -> Selection:
    """
    Select the entity ranked first at the grid node nearest to ``w``.

    Within a tie for the first rank, the smallest id wins.
    """

    point = cube.grid.snap(w)

    if point.distance > 0.0:
        log.warning(
            'importance snapped to the grid node (a=%.6g, b=%.6g), %.3g away',
            point.importance.a, point.importance.b, point.distance
        )

    ranks = cube.ranks[:, point.i, point.j]
    first = tuple(k for k, r in zip(cube.entity_ids, ranks) if r == 1)

    return Selection(
        SelectionStrategy.AT, first[0], (SelectionStage('rank 1', first), ), point.importance,
        {'snap_distance': point.distance}
    )


def select_by_reference(corr: ScalarTile, rank1: EntityTile, threshold: float | None = None) -> Selection:
    """
    Select the entity ranked first on most of the zone where a correlation tile peaks.

    :param corr:        Correlation between a reference score and the ranking scores.
    :param rank1:       Entity tile at rank 1, on the same grid.
    :param threshold:   The zone is ``corr >= threshold`` when given, else where ``corr`` is maximal.

    :raises GridMismatchError:  The two tiles have different grids.
    :raises CustomValueError:   The zone is empty.
    """

    corr.check_grid(rank1, func=select_by_reference)

    low, high = corr.value_range()

    if threshold is None:
        zone = corr.values == high
    else:
        with np.errstate(invalid='ignore'):
            zone = corr.values >= threshold

    if not zone.any():
        raise CustomValueError(
            'No cell reaches the correlation threshold {threshold} (max {high})!',
            select_by_reference, threshold=threshold, high=high
        )

    counts = np.bincount(rank1.indices[zone], minlength=len(rank1.entity_ids))

    present = tuple(sorted(k for k, c in zip(rank1.entity_ids, counts) if c))
    best = int(counts.max())
    winners = tuple(sorted(k for k, c in zip(rank1.entity_ids, counts) if c == best))

    zone_cells = int(zone.sum())

    return Selection(
        SelectionStrategy.REFERENCE, winners[0], (
            SelectionStage('ranked first in zone', present, high if threshold is None else threshold),
            SelectionStage('largest share', winners, best / zone_cells)
        ),
        details={
            'zone_cells': zone_cells, 'range': [low, high],
            'shares': {k: int(c) / zone_cells for k, c in zip(rank1.entity_ids, counts) if c}
        }
    )
