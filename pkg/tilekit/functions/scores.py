from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from ..enums import NamedScore
from ..exceptions import (
    AllZeroError, InvalidImportanceError, InvalidPriorError, NegativeInputError, UndefinedScoreError
)
from ..types import FloatArray, FuncExceptT, Importance, ImportanceT, Performance, ScoreSet

__all__ = [
    'normalize_performance',

    'ranking_score', 'score_at',

    'named_scores',

    'f_beta', 'beta_from_b', 'b_from_beta',

    'noskill_score',

    'score_rows'
]


def normalize_performance(tn: float, fp: float, fn: float, tp: float) -> Performance:
    """
    Build a :py:class:`Performance` from confusion counts or unnormalised probabilities.

    :param tn:      True negatives.
    :param fp:      False positives.
    :param fn:      False negatives.
    :param tp:      True positives.

    :return:        The four entries divided by their sum.

    :raises NegativeInputError:     An entry is negative or not finite.
    :raises AllZeroError:           All entries are zero.
    """

    values = (float(tn), float(fp), float(fn), float(tp))

    if not all(math.isfinite(v) and v >= 0.0 for v in values):
        raise NegativeInputError(normalize_performance, values)

    total = math.fsum(values)

    if total == 0.0:
        raise AllZeroError(normalize_performance)

    return Performance(*(v / total for v in values))


def ranking_score(p: Performance, w: ImportanceT) -> float:
    """
    Ranking score of a performance at importance ``w``.

    Returns NaN when the denominator vanishes.
    """

    a, b = Importance.from_param(w, ranking_score)

    numerator = (1.0 - a) * p.p_tn + a * p.p_tp
    denominator = (1.0 - a) * p.p_tn + (1.0 - b) * p.p_fp + b * p.p_fn + a * p.p_tp

    if denominator == 0.0:
        return math.nan

    return numerator / denominator


def score_at(p: Performance, score: NamedScore | ImportanceT) -> float:
    """Ranking score at a named point of the Tile or at explicit coordinates."""

    if isinstance(score, str) and not isinstance(score, NamedScore):
        score = NamedScore(score)

    return ranking_score(p, score)


def named_scores(p: Performance) -> ScoreSet:
    return ScoreSet(**{name.value: ranking_score(p, name) for name in NamedScore})


def f_beta(p: Performance, b: float) -> float:
    """
    F-beta score located at ``(1, b)`` on the right side of the Tile.

    :raises UndefinedScoreError:    No positive prediction nor positive sample.
    """

    if not 0.0 < b < 1.0:
        raise InvalidImportanceError(f_beta, 1.0, b, 'F-beta needs b in (0, 1), got b={b}!')

    value = ranking_score(p, (1.0, b))

    if math.isnan(value):
        raise UndefinedScoreError('F-beta is undefined at b={b} for {p}!', f_beta, b=b, p=p)

    return value


def beta_from_b(b: float) -> float:
    """The beta of the F-beta score found at ``(1, b)``."""

    if not 0.0 <= b < 1.0:
        raise InvalidImportanceError(beta_from_b, 1.0, b)

    return math.sqrt(b / (1.0 - b))


def b_from_beta(beta: float) -> float:
    if beta < 0.0 or not math.isfinite(beta):
        raise InvalidImportanceError(b_from_beta, 1.0, beta, 'beta must be finite and >= 0, got {b}!')

    return beta * beta / (1.0 + beta * beta)


def noskill_score(prior_pos: float, w: ImportanceT, func: FuncExceptT | None = None) -> float:
    """
    Best ranking score reachable without skill, for a positive prior.

    The score is linear-fractional in the rate of positive predictions, so the maximum over all
    no-skill performances is reached by the always-negative or the always-positive classifier.

    :raises InvalidPriorError:      The prior lies outside of [0, 1].
    :raises UndefinedScoreError:    Both extremal scores are undefined.
    """

    func = func or noskill_score

    if not 0.0 <= prior_pos <= 1.0:
        raise InvalidPriorError(func, prior_pos)

    w = Importance.from_param(w, func)

    scores = [
        s for s in (
            ranking_score(Performance.always_negative(prior_pos), w),
            ranking_score(Performance.always_positive(prior_pos), w)
        ) if not math.isnan(s)
    ]

    if not scores:
        raise UndefinedScoreError(
            'No-skill score is undefined at (a={a}, b={b}) for prior {prior}!', func, a=w.a, b=w.b, prior=prior_pos
        )

    return max(scores)


def score_rows(matrix: FloatArray, a: FloatArray, b: Iterable[float] | FloatArray) -> FloatArray:
    """
    Ranking scores of many performances over a block of the Tile.

    The arithmetic follows :py:func:`ranking_score` operation by operation, so entries are bitwise
    equal to the scalar evaluation.

    :param matrix:      (N, 4) array of (tn, fp, fn, tp).
    :param a:           Column coordinates.
    :param b:           Row coordinates.

    :return:            (N, len(b), len(a)) array, NaN where undefined.
    """

    matrix = np.asarray(matrix, np.float64)

    tn, fp, fn, tp = (matrix[:, k, None, None] for k in range(4))

    aa = np.asarray(a, np.float64)[None, None, :]
    bb = np.asarray(b, np.float64)[None, :, None]

    one_minus_a = 1.0 - aa

    numerator = one_minus_a * tn + aa * tp
    denominator = one_minus_a * tn + (1.0 - bb) * fp + bb * fn + aa * tp

    with np.errstate(divide='ignore', invalid='ignore'):
        scores = numerator / denominator

    scores[denominator == 0.0] = np.nan

    return scores
