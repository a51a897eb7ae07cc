from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from stgpytools import CustomValueError

from ..enums import SelectionStrategy
from ..exceptions import UnknownEntityError
from .builtins import FuncExceptT, IntArray, MetadataT
from .performance import Importance
from .tile import Grid

__all__ = [
    'RankCube',

    'RankStats',

    'SelectionStage',
    'Selection'
]


@dataclass(frozen=True, eq=False)
class RankCube:
    """
    Competition ranks of every entity at every node.

    ``ranks[k, i, j]`` is the rank of ``entity_ids[k]`` at ``(a_j, b_i)``.
    Entities are kept in lexicographic id order, so ties are resolved in that order wherever a
    single entity has to be picked from a tie group.
    """

    grid: Grid
    entity_ids: tuple[str, ...]
    ranks: IntArray

    def __post_init__(self) -> None:
        object.__setattr__(self, 'entity_ids', tuple(self.entity_ids))

        expected = (len(self.entity_ids), *self.grid.shape)

        if self.ranks.shape != expected:
            raise CustomValueError(
                'Rank cube must have shape {expected}, got {shape}!', RankCube,
                expected=expected, shape=self.ranks.shape
            )

        if self.ranks.flags.writeable:
            self.ranks.setflags(write=False)

    def __len__(self) -> int:
        return len(self.entity_ids)

    def __contains__(self, entity_id: object) -> bool:
        return entity_id in self.entity_ids

    def index_of(self, entity_id: str, func: FuncExceptT | None = None) -> int:
        try:
            return self.entity_ids.index(entity_id)
        except ValueError:
            raise UnknownEntityError(func or self.index_of, entity_id) from None

    def ranks_of(self, entity_id: str, func: FuncExceptT | None = None) -> IntArray:
        """Read-only G x G view of one entity's ranks."""

        return self.ranks[self.index_of(entity_id, func)]


@dataclass(frozen=True, slots=True)
class RankStats:
    """Rank statistics of one entity over the whole Tile."""

    entity_id: str
    min_rank: int
    max_rank: int
    mean_rank: float

    def as_dict(self) -> dict[str, Any]:
        return {
            'entity': self.entity_id, 'min_rank': self.min_rank,
            'max_rank': self.max_rank, 'mean_rank': self.mean_rank
        }


@dataclass(frozen=True, slots=True)
class SelectionStage:
    """One filtering step of a selection and the entities that survived it."""

    criterion: str
    survivors: tuple[str, ...]
    value: float | None = None
    """The optimal value of the criterion, when it has one."""

    def as_dict(self) -> dict[str, Any]:
        return {'criterion': self.criterion, 'value': self.value, 'survivors': list(self.survivors)}


@dataclass(frozen=True)
class Selection:
    """Outcome of a selection strategy, with its audit trail."""

    strategy: SelectionStrategy
    winner: str
    stages: tuple[SelectionStage, ...] = ()
    importance: Importance | None = None
    """Grid node the selection was made at, for point-based strategies."""

    details: MetadataT = field(default_factory=dict)

    @property
    def survivors(self) -> tuple[str, ...]:
        """Survivors of the first stage."""

        return self.stages[0].survivors if self.stages else (self.winner, )

    def as_dict(self) -> dict[str, Any]:
        return {
            'strategy': str(self.strategy),
            'winner': self.winner,
            'importance': None if self.importance is None else {'a': self.importance.a, 'b': self.importance.b},
            'stages': [s.as_dict() for s in self.stages],
            'details': self.details
        }

    def summary(self) -> str:
        lines = [f'{self.strategy}: {self.winner}']

        for stage in self.stages:
            value = '' if stage.value is None else f' = {stage.value:g}'
            lines.append(f'  {stage.criterion}{value}: {", ".join(stage.survivors)}')

        return '\n'.join(lines)
