from __future__ import annotations

import logging
from typing import Callable

import numpy as np
from scipy.stats import rankdata

from ..enums import CorrelationCoef, TileKind
from ..exceptions import DegenerateInputError, TooFewEntitiesError
from ..types import (
    BoolArray, EntitySet, EntityTile, FloatArray, Grid, ReferenceScores, ScalarTile, ZoneAnalysis, ZoneRow
)
from .parallel import WorkerConfigT, map_row_chunks
from .scores import score_rows

__all__ = [
    'pearson_along', 'spearman_along', 'kendall_along',

    'pearson', 'spearman', 'kendall',

    'correlation', 'correlation_field', 'correlation_kernel',

    'correlation_tile',

    'zone_analysis'
]

log = logging.getLogger(__name__)


def _invalid(x: FloatArray, y: FloatArray) -> BoolArray:
    return np.isnan(x) | np.isnan(y)


def _pearson_columns(x: FloatArray, y: FloatArray) -> FloatArray:
    invalid = _invalid(x, y)
    count = (~invalid).sum(axis=0)

    with np.errstate(divide='ignore', invalid='ignore'):
        mean_x = np.where(invalid, 0.0, x).sum(axis=0) / count
        mean_y = np.where(invalid, 0.0, y).sum(axis=0) / count

        dx = np.where(invalid, 0.0, x - mean_x)
        dy = np.where(invalid, 0.0, y - mean_y)

        sxx = (dx * dx).sum(axis=0)
        syy = (dy * dy).sum(axis=0)

        r = (dx * dy).sum(axis=0) / np.sqrt(sxx * syy)

    r[(count < 2) | (sxx == 0.0) | (syy == 0.0)] = np.nan

    return np.clip(r, -1.0, 1.0)


def _broadcast(x: FloatArray, y: FloatArray) -> FloatArray:
    return np.broadcast_to(np.asarray(x, np.float64)[:, None], y.shape)


def pearson_along(x: FloatArray, y: FloatArray) -> FloatArray:
    """
    Pearson's r between ``x`` and every column of ``y``.

    NaN entries are dropped pairwise, column by column. Columns with fewer than two pairs
    or without variance give NaN.

    :param x:   (n, ) vector.
    :param y:   (n, m) matrix.

    :return:    (m, ) coefficients.
    """

    return _pearson_columns(_broadcast(x, y), y)


def _average_ranks(x: FloatArray, invalid: BoolArray) -> FloatArray:
    # Invalid entries are pushed above every finite value, which leaves the ranks of the others unchanged.
    ranks = rankdata(np.where(invalid, np.inf, x), method='average', axis=0)

    return np.where(invalid, np.nan, ranks)


def spearman_along(x: FloatArray, y: FloatArray) -> FloatArray:
    """Spearman's rho (Pearson's r on average ranks) between ``x`` and every column of ``y``."""

    xx = _broadcast(x, y)
    invalid = _invalid(xx, y)

    if not invalid.any():
        return _pearson_columns(_broadcast(rankdata(x, method='average'), y), rankdata(y, method='average', axis=0))

    return _pearson_columns(_average_ranks(xx, invalid), _average_ranks(y, invalid))


def kendall_along(x: FloatArray, y: FloatArray) -> FloatArray:
    """Kendall's tau-b between ``x`` and every column of ``y``."""

    xx = _broadcast(x, y)
    valid = ~_invalid(xx, y)

    shape = y.shape[1:]
    balance = np.zeros(shape, np.float64)
    pairs, ties_x, ties_y = (np.zeros(shape, np.int64) for _ in range(3))

    with np.errstate(invalid='ignore'):
        for i in range(len(y) - 1):
            both = valid[i + 1:] & valid[i]

            sx = np.sign(xx[i + 1:] - xx[i])
            sy = np.sign(y[i + 1:] - y[i])

            balance += np.where(both, sx * sy, 0.0).sum(axis=0)
            pairs += both.sum(axis=0)
            ties_x += (both & (sx == 0.0)).sum(axis=0)
            ties_y += (both & (sy == 0.0)).sum(axis=0)

    untied_x, untied_y = pairs - ties_x, pairs - ties_y

    with np.errstate(divide='ignore', invalid='ignore'):
        tau = balance / np.sqrt(untied_x.astype(np.float64) * untied_y)

    tau[(untied_x == 0) | (untied_y == 0)] = np.nan

    return np.clip(tau, -1.0, 1.0)


_KERNELS: dict[CorrelationCoef, Callable[[FloatArray, FloatArray], FloatArray]] = {
    CorrelationCoef.PEARSON: pearson_along,
    CorrelationCoef.SPEARMAN: spearman_along,
    CorrelationCoef.KENDALL: kendall_along
}


def correlation_kernel(coef: CorrelationCoef) -> Callable[[FloatArray, FloatArray], FloatArray]:
    """The column-wise kernel of a coefficient, as used by :py:func:`correlation_field`."""

    return _KERNELS[CorrelationCoef(coef)]


def correlation(x: FloatArray, y: FloatArray, coef: CorrelationCoef = CorrelationCoef.PEARSON) -> float:
    """
    A correlation coefficient between two vectors, NaN pairs dropped.

    :raises DegenerateInputError:   Lengths differ, fewer than two pairs, or a constant vector.
    """

    coef = CorrelationCoef(coef)

    xv, yv = np.asarray(x, np.float64), np.asarray(y, np.float64)

    if xv.ndim != 1 or xv.shape != yv.shape:
        raise DegenerateInputError(
            'Vectors must be one-dimensional with equal lengths, got {sx} and {sy}!', correlation,
            sx=xv.shape, sy=yv.shape
        )

    value = float(_KERNELS[coef](xv, yv[:, None])[0])

    if np.isnan(value):
        raise DegenerateInputError(
            '{coef} is undefined: fewer than two pairs or a constant vector!', correlation, coef=coef
        )

    return value


def pearson(x: FloatArray, y: FloatArray) -> float:
    return correlation(x, y, CorrelationCoef.PEARSON)


def spearman(x: FloatArray, y: FloatArray) -> float:
    return correlation(x, y, CorrelationCoef.SPEARMAN)


def kendall(x: FloatArray, y: FloatArray) -> float:
    return correlation(x, y, CorrelationCoef.KENDALL)


def correlation_field(
    matrix: FloatArray, reference: FloatArray, g: Grid, coef: CorrelationCoef = CorrelationCoef.SPEARMAN,
    workers: WorkerConfigT = None, progress: str | None = None
) -> FloatArray:
    """
    Per-node correlation between ``reference`` and the ranking scores of the rows of ``matrix``.

    :param matrix:      (n, 4) performances.
    :param reference:   (n, ) reference values, aligned with ``matrix``.

    :return:            G x G coefficients.
    """

    kernel = _KERNELS[CorrelationCoef(coef)]
    axis = g.axis

    def _chunk(rows: slice) -> FloatArray:
        scores = score_rows(matrix, axis, axis[rows])
        n, height, width = scores.shape

        return kernel(reference, scores.reshape(n, height * width)).reshape(height, width)

    return np.concatenate(map_row_chunks(_chunk, g.size, 8 * len(matrix) * g.size, workers, progress), axis=0)


def correlation_tile(
    entities: EntitySet, ref: ReferenceScores, g: Grid = Grid(),
    coef: CorrelationCoef = CorrelationCoef.SPEARMAN, workers: WorkerConfigT = None
) -> ScalarTile:
    """
    Correlation, at every node, between the reference scores and the ranking scores of the entities.

    Entities with an undefined score at a node are left out of that node only.

    :raises TooFewEntitiesError:    Fewer than three entities have a reference score.
    """

    coef = CorrelationCoef(coef)
    scored, reference = ref.align(entities)

    if len(scored) < 3:
        raise TooFewEntitiesError(correlation_tile, len(scored))

    values = correlation_field(scored.matrix, reference, g, coef, workers, f'{coef} tile')

    return ScalarTile(g, values, TileKind.CORRELATION, {
        'coef': str(coef), 'entities': len(scored), 'pairwise_deletion': True
    })


def zone_analysis(corr: ScalarTile, rank1: EntityTile, threshold: float = 0.85) -> ZoneAnalysis:
    """
    Share of each rank-1 entity inside the zone where ``corr >= threshold``.

    An empty zone is not an error: the result carries a warning instead.

    :raises GridMismatchError:  The tiles have different grids.
    """

    corr.check_grid(rank1, func=zone_analysis)

    coef = corr.metadata.get('coef')
    coef = None if coef is None else CorrelationCoef(coef)

    with np.errstate(invalid='ignore'):
        zone = corr.values >= threshold

    zone_cells, total = int(zone.sum()), zone.size

    if not zone_cells:
        symbol = coef.symbol if coef else 'corr'
        warning = f'There is no zone where {symbol} >= {threshold:g}'

        log.warning(warning)

        return ZoneAnalysis(threshold, coef, 0, total, (), warning)

    counts = np.bincount(rank1.indices[zone], minlength=len(rank1.entity_ids))

    rows = sorted(
        (ZoneRow(k, int(c), int(c) / zone_cells) for k, c in zip(rank1.entity_ids, counts) if c),
        key=lambda r: (-r.cells, r.entity_id)
    )

    return ZoneAnalysis(threshold, coef, zone_cells, total, tuple(rows))
