from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, TypeAlias

import numpy as np
from stgpytools import cachedproperty

from ..enums import NamedScore
from ..exceptions import (
    DuplicateEntityError, InvalidImportanceError, InvalidPerformanceError, UnknownEntityError
)
from .builtins import FloatArray, FuncExceptT

__all__ = [
    'PERFORMANCE_TOLERANCE',

    'Performance',

    'Importance', 'ImportanceT',

    'ScoreSet',

    'EntityRecord',
    'EntitySet'
]

PERFORMANCE_TOLERANCE = 1e-9
"""Maximum deviation from 1 accepted for the sum of the four probabilities."""


@dataclass(frozen=True, slots=True)
class Performance:
    """
    A probability measure over the four outcomes {tn, fp, fn, tp} of a two-class classifier.

    Instances are validated on construction but never renormalised,
    use :py:func:`tilekit.normalize_performance` to build one from counts.
    """

    p_tn: float
    """Probability of a true negative."""

    p_fp: float
    """Probability of a false positive."""

    p_fn: float
    """Probability of a false negative."""

    p_tp: float
    """Probability of a true positive."""

    def __post_init__(self) -> None:
        values = self.as_tuple()

        if not all(math.isfinite(v) and v >= 0.0 for v in values):
            raise InvalidPerformanceError(
                'Probabilities must be finite and non-negative, got {values}!', Performance, values=values
            )

        if abs(math.fsum(values) - 1.0) > PERFORMANCE_TOLERANCE:
            raise InvalidPerformanceError(
                'Probabilities must sum to 1, got {total}!', Performance, total=math.fsum(values)
            )

    @property
    def prior_neg(self) -> float:
        """Probability of the negative class."""

        return self.p_tn + self.p_fp

    @property
    def prior_pos(self) -> float:
        """Probability of the positive class."""

        return self.p_fn + self.p_tp

    @property
    def predicted_pos_rate(self) -> float:
        """Probability of predicting the positive class."""

        return self.p_fp + self.p_tp

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_tn, self.p_fp, self.p_fn, self.p_tp)

    def as_array(self) -> FloatArray:
        return np.array(self.as_tuple(), np.float64)

    @classmethod
    def from_counts(cls, tn: float, fp: float, fn: float, tp: float) -> Performance:
        """Build a performance from confusion counts (or unnormalised probabilities)."""

        from ..functions import normalize_performance

        return normalize_performance(tn, fp, fn, tp)

    @classmethod
    def always_negative(cls, prior_pos: float) -> Performance:
        """The no-skill classifier that never predicts the positive class."""

        return cls(1.0 - prior_pos, 0.0, prior_pos, 0.0)

    @classmethod
    def always_positive(cls, prior_pos: float) -> Performance:
        """The no-skill classifier that always predicts the positive class."""

        return cls(0.0, 1.0 - prior_pos, 0.0, prior_pos)


@dataclass(frozen=True, slots=True)
class Importance:
    """
    Coordinates of a ranking score on the Tile.

    ``a`` is the importance given to tp compared to tn, ``b`` the importance given to fn compared to fp:
    I(tp) = a, I(tn) = 1 - a, I(fn) = b, I(fp) = 1 - b.
    """

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.a <= 1.0 and 0.0 <= self.b <= 1.0):
            raise InvalidImportanceError(Importance, self.a, self.b)

    @property
    def weights(self) -> tuple[float, float, float, float]:
        """Importance values of (tn, fp, fn, tp)."""

        return (1.0 - self.a, 1.0 - self.b, self.b, self.a)

    @classmethod
    def from_param(cls, value: ImportanceT, func: FuncExceptT | None = None) -> Importance:
        """
        Normalize an importance-like value.

        :param value:       An Importance, an (a, b) pair or a named score.
        :param func:        Function returned for custom error handling.

        :return:            Importance object.
        """

        if isinstance(value, Importance):
            return value

        if isinstance(value, NamedScore):
            return cls(*value.importance)

        a, b = value

        if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
            raise InvalidImportanceError(func or cls.from_param, a, b)

        return cls(float(a), float(b))

    def __iter__(self) -> Iterator[float]:
        yield self.a
        yield self.b


ImportanceT: TypeAlias = Importance | tuple[float, float] | NamedScore
"""Anything that can be turned into an :py:class:`Importance`."""


@dataclass(frozen=True, slots=True)
class ScoreSet:
    """The named scores of one performance, NaN when undefined."""

    tpr: float
    tnr: float
    npv: float
    ppv: float
    accuracy: float
    f1: float

    def __getitem__(self, score: NamedScore | str) -> float:
        return float(getattr(self, NamedScore(score).value))

    def as_dict(self) -> dict[str, float | None]:
        """JSON-friendly mapping, undefined scores become None."""

        return {
            name.value: (None if math.isnan(self[name]) else self[name]) for name in NamedScore
        }


@dataclass(frozen=True, slots=True)
class EntityRecord:
    """A two-class classifier and its performance."""

    entity_id: str
    performance: Performance
    group: str | None = None
    """Optional tag, typically the learning set the classifier was trained on."""

    def __post_init__(self) -> None:
        if not self.entity_id or not self.entity_id.strip():
            raise InvalidPerformanceError('Entity ids can not be empty!', EntityRecord)

    @property
    def name(self) -> str:
        """The entity id without its group suffix."""

        suffix = f' ({self.group})'

        if self.group and self.entity_id.endswith(suffix):
            return self.entity_id[:-len(suffix)]

        return self.entity_id

    @staticmethod
    def make_id(name: str, group: str | None) -> str:
        return f'{name} ({group})' if group else name


class EntitySet(cachedproperty.baseclass, Mapping[str, EntityRecord]):
    """
    An ordered, immutable collection of entities keyed by id.

    Iteration follows insertion order; engines that need a deterministic order
    independent of the input use :py:attr:`sorted_ids`.
    """

    def __init__(self, records: Iterable[EntityRecord] = (), *, func: FuncExceptT | None = None) -> None:
        func = func or EntitySet

        self._records = dict[str, EntityRecord]()

        for record in records:
            if record.entity_id in self._records:
                raise DuplicateEntityError(func, record.entity_id)

            self._records[record.entity_id] = record

    def __getitem__(self, key: str) -> EntityRecord:
        try:
            return self._records[key]
        except KeyError:
            raise UnknownEntityError(self.__getitem__, key) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def __repr__(self) -> str:
        return f'{type(self).__name__}({len(self)} entities)'

    @property
    def ids(self) -> tuple[str, ...]:
        """Entity ids in insertion order."""

        return tuple(self._records)

    @property
    def sorted_ids(self) -> tuple[str, ...]:
        """Entity ids in lexicographic order."""

        return tuple(sorted(self._records))

    @property
    def records(self) -> tuple[EntityRecord, ...]:
        return tuple(self._records.values())

    @property
    def groups(self) -> dict[str, str | None]:
        return {k: v.group for k, v in self._records.items()}

    @cachedproperty
    def matrix(self) -> FloatArray:
        """(N, 4) read-only array of (tn, fp, fn, tp), in insertion order."""

        matrix = np.array(
            [r.performance.as_tuple() for r in self._records.values()], np.float64
        ).reshape(len(self), 4)
        matrix.setflags(write=False)

        return matrix

    def sorted(self) -> EntitySet:
        """The same entities, in lexicographic id order."""

        return EntitySet(self._records[k] for k in self.sorted_ids)

    def subset(self, ids: Iterable[str]) -> EntitySet:
        return EntitySet((self[k] for k in ids), func=self.subset)

    def with_entity(self, record: EntityRecord) -> EntitySet:
        return EntitySet((*self._records.values(), record), func=self.with_entity)

    @classmethod
    def from_performances(
        cls, performances: Mapping[str, Performance], groups: Mapping[str, str | None] | None = None
    ) -> EntitySet:
        groups = groups or {}

        return cls(EntityRecord(k, p, groups.get(k)) for k, p in performances.items())

    def as_dict(self) -> dict[str, Any]:
        return {
            k: {'group': r.group, 'performance': dict(zip(('tn', 'fp', 'fn', 'tp'), r.performance.as_tuple()))}
            for k, r in self._records.items()
        }

