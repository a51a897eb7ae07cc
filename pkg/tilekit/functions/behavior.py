"""
Monte-Carlo behaviour of a score against the whole Tile.

By default every grid node draws its own sample from a stream seeded by ``(seed, i, j)``,
so a node's value never depends on the chunking or the thread count.
``shared_samples=True`` draws one sample for the whole grid instead, which is much faster
and makes neighbouring nodes directly comparable.
"""

from __future__ import annotations

import numpy as np

from ..enums import CorrelationCoef, DistributionKind, NamedScore, TileKind
from ..exceptions import TooFewSamplesError
from ..types import FloatArray, Grid, Importance, ImportanceT, PerformanceDistribution, ScalarTile
from .correlation import correlation_field, correlation_kernel
from .parallel import WorkerConfigT, map_row_chunks
from .scores import score_rows

__all__ = [
    'MIN_SAMPLES',

    'sample_performances',

    'behavior_tile'
]

MIN_SAMPLES = 100
"""Smallest Monte-Carlo sample accepted by :py:func:`behavior_tile`."""


def sample_performances(dist: PerformanceDistribution, rng: np.random.Generator | None = None) -> FloatArray:
    """
    Draw the performances of a distribution.

    :param rng:     Random stream, seeded by the distribution when None.

    :return:        (n, 4) array of (tn, fp, fn, tp). Empirical distributions return the entities in id order.
    """

    if dist.kind is DistributionKind.EMPIRICAL:
        assert dist.entities is not None
        return dist.entities.sorted().matrix

    if rng is None:
        rng = np.random.default_rng(dist.seed)

    if dist.kind is DistributionKind.UNIFORM_ALL:
        return rng.dirichlet(np.ones(4), size=dist.samples)

    prior = float(dist.prior_pos)  # type: ignore[arg-type]

    tp = rng.uniform(0.0, prior, dist.samples)
    fp = rng.uniform(0.0, 1.0 - prior, dist.samples)

    return np.stack([(1.0 - prior) - fp, fp, prior - tp, tp], axis=1)


def _point_stream(dist: PerformanceDistribution, i: int, j: int) -> np.random.Generator:
    return np.random.default_rng((dist.seed, i, j))


def _per_point_field(
    dist: PerformanceDistribution, w: Importance, g: Grid, coef: CorrelationCoef, workers: WorkerConfigT
) -> FloatArray:
    kernel = correlation_kernel(coef)
    axis = g.axis
    wa, wb = np.array([w.a]), np.array([w.b])

    def _chunk(rows: slice) -> FloatArray:
        indices = range(g.size)[rows]
        out = np.empty((len(indices), g.size), np.float64)

        for r, i in enumerate(indices):
            for j in range(g.size):
                matrix = sample_performances(dist, _point_stream(dist, i, j))

                reference = score_rows(matrix, wa, wb)[:, 0, 0]
                scores = score_rows(matrix, axis[j:j + 1], axis[i:i + 1])[:, 0, 0]

                out[r, j] = kernel(reference, scores[:, None])[0]

        return out

    return np.concatenate(
        map_row_chunks(_chunk, g.size, 4 * dist.size * g.size, workers, f'{coef} behaviour'), axis=0
    )


def behavior_tile(
    score: NamedScore | ImportanceT, dist: PerformanceDistribution, g: Grid = Grid(),
    coef: CorrelationCoef = CorrelationCoef.SPEARMAN, workers: WorkerConfigT = None,
    shared_samples: bool = False
) -> ScalarTile:
    """
    How a score correlates with every ranking score of the Tile over a distribution of performances.

    Sampling is seeded by the distribution, so equal seeds give identical tiles.
    Empirical distributions are never sampled, every node sees the whole entity set.

    :param score:           The studied score, by name or coordinates.
    :param dist:            Performance distribution.
    :param coef:            Correlation coefficient.
    :param shared_samples:  One sample for all nodes instead of one stream per node.

    :raises TooFewSamplesError:     A Monte-Carlo distribution with fewer than 100 samples.
    """

    coef = CorrelationCoef(coef)

    if isinstance(score, str) and not isinstance(score, NamedScore):
        score = NamedScore(score)

    w = Importance.from_param(score, behavior_tile)

    if dist.kind is not DistributionKind.EMPIRICAL and dist.size < MIN_SAMPLES:
        raise TooFewSamplesError(behavior_tile, dist.size, MIN_SAMPLES)

    shared = shared_samples or dist.kind is DistributionKind.EMPIRICAL

    if shared:
        matrix = sample_performances(dist)
        reference = score_rows(matrix, np.array([w.a]), np.array([w.b]))[:, 0, 0]

        values = correlation_field(matrix, reference, g, coef, workers, f'{coef} behaviour')
    else:
        values = _per_point_field(dist, w, g, coef, workers)

    return ScalarTile(g, values, TileKind.BEHAVIOR, {
        'coef': str(coef), 'score': str(score) if isinstance(score, NamedScore) else [w.a, w.b],
        'distribution': dist.describe(), 'sampling': 'shared' if shared else 'per-node'
    })
