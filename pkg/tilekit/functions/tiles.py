from __future__ import annotations

import logging
from itertools import combinations
from typing import Any

import numpy as np

from ..enums import InterpolationOrder, NamedScore, TileKind, ValueMethod
from ..exceptions import (
    EmptyEntitySetError, InfeasibleSolutionError, InvalidPriorError, SingularSystemError, UndefinedCornerError
)
from ..types import (
    BoolTile, EntitySet, EntityTile, FloatArray, FuncExceptT, Grid, Performance, ScalarTile
)
from .parallel import WorkerConfigT, map_row_chunks
from .recover import recover_performance
from .scores import ranking_score, score_rows

__all__ = [
    'RECOVERY_POINTS',

    'value_tile', 'value_tiles',

    'baseline_tile', 'sota_tile',

    'noskill_tile', 'relative_skill_tile',

    'hatch_mask',

    'entity_score_tile', 'entity_boundaries'
]

log = logging.getLogger(__name__)

RECOVERY_POINTS = (
    NamedScore.ACCURACY, NamedScore.TPR, NamedScore.TNR, NamedScore.NPV, NamedScore.PPV, NamedScore.F1
)
"""Points whose scores are sampled by the recovery method; triples, then pairs, are tried in combination order."""

_CORNERS = (NamedScore.TNR, NamedScore.TPR, NamedScore.NPV, NamedScore.PPV)


def _grid_field(
    matrix: FloatArray, g: Grid, reduce: Any, workers: WorkerConfigT, progress: str | None = None
) -> FloatArray:
    """Evaluate all entities over the grid, row chunk by row chunk, and reduce each chunk."""

    axis = g.axis

    def _chunk(rows: slice) -> FloatArray:
        return reduce(score_rows(matrix, axis, axis[rows]))

    return np.concatenate(map_row_chunks(_chunk, g.size, len(matrix) * g.size, workers, progress), axis=-2)


def _direct(p: Performance, g: Grid, workers: WorkerConfigT) -> FloatArray:
    return _grid_field(p.as_array()[None], g, lambda s: s[0], workers)


def _inverse_mean(x0: FloatArray, x1: FloatArray, w1: FloatArray) -> FloatArray:
    """Weighted harmonic mean; a zero weight removes its term even when the value is 0 or NaN."""

    w0 = 1.0 - w1

    with np.errstate(divide='ignore', invalid='ignore'):
        t0 = np.where(w0 == 0.0, 0.0, w0 / x0)
        t1 = np.where(w1 == 0.0, 0.0, w1 / x1)

        return 1.0 / (t0 + t1)


def _complement_mean(x0: FloatArray, x1: FloatArray, w1: FloatArray) -> FloatArray:
    """Weighted f-mean with f(x) = 1 / (1 - x)."""

    return 1.0 - _inverse_mean(1.0 - x0, 1.0 - x1, w1)


def _interpolate(p: Performance, g: Grid, order: InterpolationOrder, strict: bool) -> FloatArray:
    corners = {s: ranking_score(p, s) for s in _CORNERS}
    tnr, tpr, npv, ppv = corners.values()

    undefined = [s.label for s, v in corners.items() if np.isnan(v)]

    if undefined and strict:
        raise UndefinedCornerError(value_tile, undefined)

    axis = g.axis
    a, b = axis[None, :], axis[:, None]

    if InterpolationOrder(order) is InterpolationOrder.VERTICAL_FIRST:
        left = _inverse_mean(np.float64(tnr), np.float64(npv), b)
        right = _inverse_mean(np.float64(ppv), np.float64(tpr), b)

        return _complement_mean(left, right, a)

    bottom = _complement_mean(np.float64(tnr), np.float64(ppv), a)
    top = _complement_mean(np.float64(npv), np.float64(tpr), a)

    return _inverse_mean(bottom, top, b)


def _constraints(p: Performance, points: tuple[NamedScore, ...]) -> list[tuple[tuple[float, float], float]] | None:
    constraints = [(s.importance, ranking_score(p, s)) for s in points]

    if any(np.isnan(v) for _, v in constraints):
        return None

    return constraints


def _recover(p: Performance) -> tuple[Performance, dict[str, Any]] | None:
    for size, prior_pos in ((3, None), (2, p.prior_pos)):
        for points in combinations(RECOVERY_POINTS, size):
            if (constraints := _constraints(p, points)) is None:
                continue

            try:
                recovered = recover_performance(constraints, prior_pos)
            except (SingularSystemError, InfeasibleSolutionError):
                continue

            metadata: dict[str, Any] = {'recovered_from': [w for w, _ in constraints]}

            if prior_pos is not None:
                metadata['prior_pos'] = prior_pos

            return recovered, metadata

    return None


def value_tile(
    p: Performance, g: Grid = Grid(), method: ValueMethod = ValueMethod.DIRECT,
    order: InterpolationOrder = InterpolationOrder.VERTICAL_FIRST, strict: bool = False,
    workers: WorkerConfigT = None, entity_id: str | None = None
) -> ScalarTile:
    """
    Scores of one performance over the whole Tile.

    :param p:           Performance to evaluate.
    :param g:           Grid.
    :param method:      Direct evaluation, interpolation from the four corners,
                        or direct evaluation of the performance recovered from three scores
                        (two scores and the prior when no triple determines it).
                        An undeterminable performance is interpolated instead, with a warning.
    :param order:       Composition order of the two f-means, for interpolation.
    :param strict:      Raise instead of propagating NaN when an interpolation corner is undefined.
    :param workers:     Worker configuration or thread count.
    :param entity_id:   Stored in the metadata.

    :raises UndefinedCornerError:   ``strict`` interpolation with an undefined corner.
    """

    method = ValueMethod(method)
    metadata: dict[str, Any] = {'method': str(method)}

    if entity_id is not None:
        metadata['entity_id'] = entity_id

    if method is ValueMethod.INTERPOLATION:
        metadata['order'] = str(InterpolationOrder(order))
        values = _interpolate(p, g, order, strict)
    elif method is ValueMethod.RECOVERY:
        if (recovery := _recover(p)) is None:
            log.warning('No set of canonical scores determines %s, interpolating its corners instead', p)
            metadata['fallback'] = str(ValueMethod.INTERPOLATION)
            values = _interpolate(p, g, order, strict)
        else:
            recovered, recovery_metadata = recovery
            metadata |= recovery_metadata
            values = _direct(recovered, g, workers)
    else:
        values = _direct(p, g, workers)

    return ScalarTile(g, values, TileKind.VALUE, metadata)


def value_tiles(
    entities: EntitySet, g: Grid = Grid(), method: ValueMethod = ValueMethod.DIRECT, workers: WorkerConfigT = None
) -> dict[str, ScalarTile]:
    """Value tiles of every entity, keyed in lexicographic id order."""

    return {
        k: value_tile(entities[k].performance, g, method, workers=workers, entity_id=k) for k in entities.sorted_ids
    }


def _check_entities(entities: EntitySet, func: FuncExceptT) -> FloatArray:
    if not len(entities):
        raise EmptyEntitySetError(func)

    return entities.sorted().matrix


def baseline_tile(entities: EntitySet, g: Grid = Grid(), workers: WorkerConfigT = None) -> ScalarTile:
    """Pointwise minimum of the value tiles, ignoring undefined entries."""

    matrix = _check_entities(entities, baseline_tile)

    values = _grid_field(matrix, g, lambda s: np.fmin.reduce(s, axis=0), workers, 'Baseline tile')

    return ScalarTile(g, values, TileKind.BASELINE, {'entities': len(entities)})


def sota_tile(entities: EntitySet, g: Grid = Grid(), workers: WorkerConfigT = None) -> ScalarTile:
    """Pointwise maximum of the value tiles, ignoring undefined entries."""

    matrix = _check_entities(entities, sota_tile)

    values = _grid_field(matrix, g, lambda s: np.fmax.reduce(s, axis=0), workers, 'SOTA tile')

    return ScalarTile(g, values, TileKind.SOTA, {'entities': len(entities)})


def noskill_tile(prior_pos: float, g: Grid = Grid(), workers: WorkerConfigT = None) -> ScalarTile:
    """Best score reachable without skill at every point, for a positive prior."""

    if not 0.0 <= prior_pos <= 1.0:
        raise InvalidPriorError(noskill_tile, prior_pos)

    matrix = np.stack([
        Performance.always_negative(prior_pos).as_array(), Performance.always_positive(prior_pos).as_array()
    ])

    values = _grid_field(matrix, g, lambda s: np.fmax(s[0], s[1]), workers)

    return ScalarTile(g, values, TileKind.NOSKILL, {'prior_pos': prior_pos})


def relative_skill_tile(sota: ScalarTile, noskill: ScalarTile) -> ScalarTile:
    """
    How far the state of the art is above chance, relative to the room left by chance.

    Undefined where the no-skill value is 1 or where an input is undefined.
    """

    sota.check_grid(noskill, func=relative_skill_tile)

    with np.errstate(divide='ignore', invalid='ignore'):
        values = (sota.values - noskill.values) / (1.0 - noskill.values)

    values[noskill.values == 1.0] = np.nan

    return ScalarTile(sota.grid, values, TileKind.SKILL, dict(noskill.metadata))


def hatch_mask(value: ScalarTile, noskill: ScalarTile) -> BoolTile:
    """Cells where a classifier without skill would do better than ``value``."""

    value.check_grid(noskill, func=hatch_mask)

    with np.errstate(invalid='ignore'):
        mask = (noskill.values > value.values) | (np.isnan(value.values) & ~np.isnan(noskill.values))

    return BoolTile(value.grid, mask, TileKind.HATCH, {'entity_id': value.entity_id})


def entity_score_tile(entities: EntitySet, tile: EntityTile, workers: WorkerConfigT = None) -> ScalarTile:
    """Score of the entity shown in each cell of an entity tile."""

    matrix = entities.subset(tile.entity_ids).matrix
    axis, g = tile.grid.axis, tile.grid

    def _chunk(rows: slice) -> FloatArray:
        scores = score_rows(matrix, axis, axis[rows])
        index = tile.indices[rows].astype(np.intp)[None]

        return np.take_along_axis(scores, index, axis=0)[0]

    values = np.concatenate(map_row_chunks(_chunk, g.size, len(matrix) * g.size, workers), axis=0)

    return ScalarTile(g, values, TileKind.VALUE, {'rank': tile.rank})


def entity_boundaries(tile: EntityTile) -> BoolTile:
    """Cells whose right or upper neighbour is held by another entity."""

    indices = tile.indices

    mask = np.zeros(tile.grid.shape, np.bool_)
    mask[:, :-1] |= indices[:, :-1] != indices[:, 1:]
    mask[:-1, :] |= indices[:-1, :] != indices[1:, :]

    return BoolTile(tile.grid, mask, TileKind.BOUNDARY, {'rank': tile.rank})
