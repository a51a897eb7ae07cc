from __future__ import annotations

from typing import Any

from stgpytools import (
    CustomValueError, FileIsADirectoryError, FileNotExistsError, FilePermissionError, FileTypeMismatchError,
    FileWasNotFoundError, FuncExceptT, SupportsString
)

__all__ = [
    'FileNotExistsError',
    'FileWasNotFoundError',
    'FilePermissionError',
    'FileTypeMismatchError',
    'FileIsADirectoryError',

    'ParseError',
    'InfeasibleRepairError',
    'NoMatchingEntitiesError',
    'TileIOError'
]


class ParseError(CustomValueError):
    """Raised when a row or a field of an input file can not be parsed."""

    def __init__(
        self, func: FuncExceptT, path: Any, row: int, column: str | None = None,
        message: SupportsString = '{path}, row {row}, column {column}: could not parse the value!',
        **kwargs: Any
    ) -> None:
        super().__init__(message, func, path=path, row=row, column=column or '-', **kwargs)


class InfeasibleRepairError(CustomValueError):
    """Raised when the fixed-prior repair would produce a negative probability."""

    def __init__(
        self, func: FuncExceptT, entity_id: str, prior_pos: float,
        message: SupportsString = 'Row "{entity_id}" can not be repaired to the positive prior {prior_pos}!',
        **kwargs: Any
    ) -> None:
        super().__init__(message, func, entity_id=entity_id, prior_pos=prior_pos, **kwargs)


class NoMatchingEntitiesError(CustomValueError):
    """Raised when no reference score matches an entity of the set."""

    def __init__(
        self, func: FuncExceptT, path: Any,
        message: SupportsString = 'No reference score in {path} matches a known entity!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, path=path, **kwargs)


class TileIOError(CustomValueError):
    """Raised when a tile can not be written or read back."""
