from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping

import numpy as np
from stgpytools import CustomValueError

from ..enums import CorrelationCoef, DistributionKind
from .builtins import FloatArray, MetadataT
from .performance import EntitySet

__all__ = [
    'ReferenceScores',

    'PerformanceDistribution',

    'ZoneRow',
    'ZoneAnalysis'
]


class ReferenceScores(Mapping[str, float]):
    """External scores (mIoU, ...) keyed by entity id."""

    def __init__(self, scores: Mapping[str, float], unmatched: tuple[str, ...] = ()) -> None:
        self._scores = {str(k): float(v) for k, v in scores.items()}
        self.unmatched = tuple(unmatched)
        """Ids read from the source that did not match any entity."""

    def __getitem__(self, key: str) -> float:
        return self._scores[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._scores)

    def __len__(self) -> int:
        return len(self._scores)

    def __repr__(self) -> str:
        return f'{type(self).__name__}({len(self)} scores, {len(self.unmatched)} unmatched)'

    def align(self, entities: EntitySet) -> tuple[EntitySet, FloatArray]:
        """
        Restrict ``entities`` to the scored ones, sorted by id, with the matching score vector.
        """

        ids = [k for k in entities.sorted_ids if k in self._scores]

        return entities.subset(ids), np.array([self._scores[k] for k in ids], np.float64)


@dataclass(frozen=True)
class PerformanceDistribution:
    """A distribution of performances sampled to study how scores behave."""

    kind: DistributionKind = DistributionKind.UNIFORM_ALL
    prior_pos: float | None = None
    """Positive prior, mandatory for the fixed-prior distribution."""

    entities: EntitySet | None = None
    """Entity set, mandatory for the empirical distribution."""

    samples: int = 10_000
    """Monte-Carlo sample count; ignored by the empirical distribution."""

    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, 'kind', DistributionKind(self.kind))

        if self.kind is DistributionKind.UNIFORM_FIXED_PRIOR and (
            self.prior_pos is None or not 0.0 <= self.prior_pos <= 1.0
        ):
            raise CustomValueError(
                'The fixed-prior distribution needs a prior in [0, 1], got {prior}!',
                PerformanceDistribution, prior=self.prior_pos
            )

        if self.kind is DistributionKind.EMPIRICAL and self.entities is None:
            raise CustomValueError('The empirical distribution needs an entity set!', PerformanceDistribution)

        if self.size < 2:
            raise CustomValueError(
                'A distribution needs at least 2 samples, got {size}!', PerformanceDistribution, size=self.size
            )

        if not 0 <= self.seed < 2 ** 64:
            raise CustomValueError(
                'Seeds must be 64-bit unsigned integers, got {seed}!', PerformanceDistribution, seed=self.seed
            )

    @property
    def size(self) -> int:
        """Number of performances the distribution yields."""

        if self.kind is DistributionKind.EMPIRICAL:
            return len(self.entities or ())

        return self.samples

    def describe(self) -> MetadataT:
        return {
            'kind': str(self.kind), 'prior_pos': self.prior_pos, 'samples': self.size,
            'seed': None if self.kind is DistributionKind.EMPIRICAL else self.seed
        }


@dataclass(frozen=True, slots=True)
class ZoneRow:
    entity_id: str
    cells: int
    share: float


@dataclass(frozen=True)
class ZoneAnalysis:
    """Which entities are ranked first inside the zone where a correlation tile reaches a threshold."""

    threshold: float
    coef: CorrelationCoef | None
    zone_cells: int
    total_cells: int
    rows: tuple[ZoneRow, ...] = ()
    warning: str | None = None
    details: MetadataT = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return self.zone_cells == 0

    @property
    def zone_fraction(self) -> float:
        return self.zone_cells / self.total_cells if self.total_cells else math.nan

    def as_dict(self) -> dict[str, Any]:
        return {
            'threshold': self.threshold,
            'coef': None if self.coef is None else str(self.coef),
            'zone_cells': self.zone_cells,
            'total_cells': self.total_cells,
            'zone_fraction': self.zone_fraction,
            'rows': [{'entity': r.entity_id, 'cells': r.cells, 'share': r.share} for r in self.rows],
            'warning': self.warning
        }
