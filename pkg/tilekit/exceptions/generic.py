from __future__ import annotations

from typing import TYPE_CHECKING, Any, Iterable

from stgpytools import (
    CustomIndexError, CustomKeyError, CustomValueError, FuncExceptT, MismatchError, SupportsString
)

if TYPE_CHECKING:
    from ..types import Grid


__all__ = [
    'MismatchError',

    'GridMismatchError',

    'EmptyEntitySetError',
    'DuplicateEntityError',
    'UnknownEntityError',

    'RankOutOfRangeError',

    'TooFewEntitiesError',
    'TooFewSamplesError',

    'DegenerateInputError'
]


class GridMismatchError(MismatchError):
    """Raised when tiles defined on different grids are combined."""

    @classmethod
    def _item_to_name(cls, item: Grid) -> str:
        return f'{item.size}x{item.size}'

    def __init__(
        self, func: FuncExceptT, grids: Iterable[Grid],
        message: SupportsString = 'All tiles must share the same grid!', **kwargs: Any
    ) -> None:
        super().__init__(func, grids, message, **kwargs)

    if TYPE_CHECKING:
        @classmethod
        def check(cls, func: FuncExceptT, *grids: Grid, **kwargs: Any) -> None:
            ...


class EmptyEntitySetError(CustomValueError):
    """Raised when an operation needs at least one entity."""

    def __init__(
        self, func: FuncExceptT, message: SupportsString = 'The entity set is empty!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, **kwargs)


class DuplicateEntityError(CustomValueError):
    """Raised when two entities share the same id."""

    def __init__(
        self, func: FuncExceptT, entity_id: str,
        message: SupportsString = 'Entity "{entity_id}" is defined more than once!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, entity_id=entity_id, **kwargs)


class UnknownEntityError(CustomKeyError):
    """Raised when an entity id is not part of the set."""

    def __init__(
        self, func: FuncExceptT, entity_id: str,
        message: SupportsString = 'Entity "{entity_id}" is not part of this set!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, entity_id=entity_id, **kwargs)


class RankOutOfRangeError(CustomIndexError):
    """Raised when a requested rank is outside of [1, N]."""

    def __init__(
        self, func: FuncExceptT, rank: int, count: int,
        message: SupportsString = 'Rank {rank} is outside of [1, {count}]!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, rank=rank, count=count, **kwargs)


class TooFewEntitiesError(CustomValueError):
    """Raised when a correlation is requested over fewer than three entities."""

    def __init__(
        self, func: FuncExceptT, count: int, minimum: int = 3,
        message: SupportsString = 'At least {minimum} entities with reference scores are needed, got {count}!',
        **kwargs: Any
    ) -> None:
        super().__init__(message, func, count=count, minimum=minimum, **kwargs)


class TooFewSamplesError(CustomValueError):
    """Raised when a performance distribution asks for too few Monte-Carlo samples."""

    def __init__(
        self, func: FuncExceptT, count: int, minimum: int,
        message: SupportsString = 'At least {minimum} samples are needed, got {count}!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, count=count, minimum=minimum, **kwargs)


class DegenerateInputError(CustomValueError):
    """Raised when a correlation coefficient is requested on a constant or too short vector."""
