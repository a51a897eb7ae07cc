from __future__ import annotations

from stgpytools import CustomStrEnum as _CustomStrEnum

__all__ = [
    'CustomStrEnum'
]


class CustomStrEnum(_CustomStrEnum):
    """String enum printed and formatted as its value, as written in files and on the command line."""

    def __str__(self) -> str:
        return str(self.value)

    def __format__(self, format_spec: str) -> str:
        return format(str(self.value), format_spec)
