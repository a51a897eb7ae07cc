from __future__ import annotations

from typing import Sequence

import numpy as np

from ..exceptions import InfeasibleSolutionError, SingularSystemError
from ..types import FloatArray, FuncExceptT, Importance, ImportanceT, Performance

__all__ = [
    'PIVOT_TOLERANCE',
    'CLAMP_TOLERANCE',

    'solve_linear_system',

    'score_constraint_row',

    'recover_performance'
]

PIVOT_TOLERANCE = 1e-10
"""A pivot smaller than this, relative to its row's largest entry, makes the system singular."""

CLAMP_TOLERANCE = 1e-9
"""Negative components down to ``-CLAMP_TOLERANCE`` are rounding noise and clamped to 0."""


def solve_linear_system(
    matrix: FloatArray, rhs: FloatArray, tolerance: float = PIVOT_TOLERANCE, func: FuncExceptT | None = None
) -> FloatArray:
    """
    Solve a small dense square system by Gaussian elimination with scaled partial pivoting.

    :param matrix:      (n, n) coefficients. Not modified.
    :param rhs:         (n, ) right-hand side. Not modified.
    :param tolerance:   Relative pivot threshold.
    :param func:        Function returned for custom error handling.

    :raises SingularSystemError:    A pivot falls under the threshold.
    """

    func = func or solve_linear_system

    a = np.array(matrix, np.float64, copy=True)
    x = np.array(rhs, np.float64, copy=True)
    n = len(x)

    scale = np.abs(a).max(axis=1)

    if not (scale > 0.0).all():
        raise SingularSystemError(func)

    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k]) / scale[k:]))

        if abs(a[p, k]) <= tolerance * scale[p]:
            raise SingularSystemError(func)

        if p != k:
            a[[k, p]] = a[[p, k]]
            x[[k, p]] = x[[p, k]]
            scale[[k, p]] = scale[[p, k]]

        for i in range(k + 1, n):
            if a[i, k] != 0.0:
                lam = a[i, k] / a[k, k]
                a[i, k:] -= lam * a[k, k:]
                x[i] -= lam * x[k]

    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]

    return x


def score_constraint_row(w: ImportanceT, score: float) -> FloatArray:
    """Coefficients over (tn, fp, fn, tp) of the equation ``ranking_score(p, w) = score``."""

    a, b = Importance.from_param(w, score_constraint_row)

    return np.array([
        (1.0 - a) * (1.0 - score), -score * (1.0 - b), -score * b, a * (1.0 - score)
    ], np.float64)


def recover_performance(
    constraints: Sequence[tuple[ImportanceT, float]], prior_pos: float | None = None
) -> Performance:
    """
    Recover the performance that produced known ranking scores.

    Each score gives one linear equation in the four probabilities; together with the normalisation
    they form a 4 x 4 system.

    :param constraints:     Three (importance, score) pairs, or two when ``prior_pos`` is given.
    :param prior_pos:       Positive prior, used as the fourth equation.

    :raises SingularSystemError:        The constraints do not determine a unique performance.
    :raises InfeasibleSolutionError:    A component of the solution is negative.
    """

    needed = 3 if prior_pos is None else 2

    if len(constraints) != needed:
        raise SingularSystemError(
            recover_performance, 'Expected {needed} score constraints, got {count}!',
            needed=needed, count=len(constraints)
        )

    rows = [score_constraint_row(w, s) for w, s in constraints]
    rhs = [0.0] * len(rows)

    if prior_pos is not None:
        rows.append(np.array([0.0, 0.0, 1.0, 1.0]))
        rhs.append(prior_pos)

    rows.append(np.ones(4))
    rhs.append(1.0)

    solution = solve_linear_system(np.stack(rows), np.array(rhs), func=recover_performance)

    if (solution < -CLAMP_TOLERANCE).any():
        raise InfeasibleSolutionError(recover_performance, tuple(solution.tolist()))

    if (solution < 0.0).any():
        solution = np.maximum(solution, 0.0)
        solution /= solution.sum()

    return Performance(*solution.tolist())
