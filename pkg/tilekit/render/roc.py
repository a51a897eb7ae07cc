from __future__ import annotations

import logging
from collections import deque
from typing import Iterable, NamedTuple

import numpy as np
from matplotlib.figure import Figure

from ..exceptions import EmptyEntitySetError, UndefinedRateError
from ..types import EntitySet, FloatArray, Performance
from .base import RenderOptions

__all__ = [
    'RocPoint',
    'RocFrontiers',

    'roc_point',
    'roc_points',
    'roc_frontiers',

    'roc_scatter'
]

log = logging.getLogger(__name__)


class RocPoint(NamedTuple):
    fpr: float
    tpr: float


class RocFrontiers(NamedTuple):
    """Best and worst performances reachable by mixing the classifiers, as (n, 2) (fpr, tpr) vertices."""

    upper: FloatArray
    lower: FloatArray


def roc_point(p: Performance) -> RocPoint:
    """
    False and true positive rates of a performance.

    :raises UndefinedRateError:     One of the classes is absent.
    """

    if p.prior_pos == 0.0 or p.prior_neg == 0.0:
        raise UndefinedRateError(
            'ROC rates need both classes, the positive prior is {prior}!', roc_point, prior=p.prior_pos
        )

    return RocPoint(p.p_fp / (p.p_fp + p.p_tn), p.p_tp / (p.p_tp + p.p_fn))


def roc_points(entities: EntitySet) -> tuple[dict[str, RocPoint], list[str]]:
    """ROC points of every entity that has both classes, and the ids that were skipped."""

    points = dict[str, RocPoint]()
    skipped = list[str]()

    for record in entities.records:
        try:
            points[record.entity_id] = roc_point(record.performance)
        except UndefinedRateError:
            skipped.append(record.entity_id)
            log.warning('%s has a single class, left out of the ROC plot', record.entity_id)

    return points, skipped


def _cross(o: RocPoint, a: RocPoint, b: RocPoint) -> float:
    return (a.fpr - o.fpr) * (b.tpr - o.tpr) - (a.tpr - o.tpr) * (b.fpr - o.fpr)


def _chain(points: list[RocPoint], upper: bool) -> FloatArray:
    hull = deque[RocPoint]()

    for point in points:
        while len(hull) >= 2:
            turn = _cross(hull[-2], hull[-1], point)

            if (turn > 0.0) if upper else (turn < 0.0):
                hull.pop()
            else:
                break

        hull.append(point)

    return np.array(hull, np.float64)


def roc_frontiers(points: Iterable[RocPoint | tuple[float, float]]) -> RocFrontiers:
    """
    Upper and lower convex hulls of ROC points together with (0, 0) and (1, 1).

    Collinear points stay on the hull, so every vertex is one of the given points or a corner.
    """

    unique = sorted({RocPoint(*map(float, p)) for p in points} | {RocPoint(0.0, 0.0), RocPoint(1.0, 1.0)})

    return RocFrontiers(_chain(unique, True), _chain(unique, False))


def roc_scatter(entities: EntitySet, opts: RenderOptions = RenderOptions()) -> Figure:
    """
    Scatter of the entities in ROC space with the dashed frontiers of what mixing them can reach.

    Entities with a single class are skipped with a warning.

    :raises EmptyEntitySetError:    No entity can be placed.
    """

    points, _ = roc_points(entities)

    if not points:
        raise EmptyEntitySetError(roc_scatter, 'No entity has both classes, nothing to plot!')

    frontiers = roc_frontiers(points.values())

    fig = Figure(figsize=opts.figsize, dpi=opts.dpi, layout='constrained')
    ax = fig.add_subplot()

    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_aspect('equal')
    ax.set_xlabel('false positive rate')
    ax.set_ylabel('true positive rate')
    ax.set_title(opts.title or 'ROC')

    ax.plot([0.0, 1.0], [0.0, 1.0], color='#bbbbbb', linewidth=0.6, linestyle=':')

    for hull, name in ((frontiers.upper, 'supremum'), (frontiers.lower, 'infimum')):
        ax.plot(hull[:, 0], hull[:, 1], color='#444444', linestyle='--', linewidth=0.9, label=name)

    xy = np.array([points[k] for k in sorted(points)], np.float64)
    ax.scatter(xy[:, 0], xy[:, 1], s=10, color='#1f77b4', zorder=3)

    ax.legend(loc='lower right', fontsize=7, frameon=False)

    return fig
