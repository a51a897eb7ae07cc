from __future__ import annotations

import csv
import json
import math
from typing import Any, Callable, TextIO
from uuid import uuid4

import numpy as np
from stgpytools import FilePathType, FileWasNotFoundError, SPath, check_perms

from ..enums import ExportFormat, TileKind
from ..exceptions import TileIOError
from ..types import BoolTile, EntityTile, FuncExceptT, Grid, ScalarTile

__all__ = [
    'TileT',

    'tile_to_dict',

    'export_tile',
    'import_tile'
]

TileT = ScalarTile | BoolTile | EntityTile


def _number(value: float) -> float | None:
    return None if math.isnan(value) else value


def _cells(tile: TileT) -> list[list[Any]]:
    if isinstance(tile, EntityTile):
        return tile.cells.tolist()

    if isinstance(tile, BoolTile):
        return tile.mask.tolist()

    return [[_number(v) for v in row] for row in tile.values.tolist()]


def tile_to_dict(tile: TileT) -> dict[str, Any]:
    """JSON document of a tile. ``values[i][j]`` is the value at ``(a[j], b[i])``, undefined values are null."""

    axis = tile.grid.axis.tolist()
    values = _cells(tile)

    document: dict[str, Any] = {
        'kind': str(tile.kind),
        'grid_size': tile.grid.size,
        'a': axis,
        'b': axis,
        'values': values,
        'undefined': sum(v is None for row in values for v in row),
        'metadata': dict(tile.metadata)
    }

    if isinstance(tile, EntityTile):
        document['rank'] = tile.rank
        document['entities'] = list(tile.entity_ids)

    return document


def _write_atomic(out_path: SPath, write: Callable[[TextIO], None]) -> None:
    """Write to a temporary sibling of ``out_path``, then move it over the target."""

    tmp_path = out_path.with_name(f'.{out_path.name}.{uuid4().hex}.tmp')

    try:
        with tmp_path.open('w', encoding='utf-8', newline='') as f:
            write(f)

        tmp_path.replace(out_path)
    except BaseException:
        tmp_path.unlink(missing_ok=True)
        raise


def _write_json(tile: TileT) -> Callable[[TextIO], None]:
    def _write(f: TextIO) -> None:
        f.write(json.dumps(tile_to_dict(tile), ensure_ascii=False) + '\n')

    return _write


def _write_csv(tile: TileT) -> Callable[[TextIO], None]:
    def _write(f: TextIO) -> None:
        axis = tile.grid.axis.tolist()

        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['b\\a', *map(repr, axis)])

        for b, row in zip(axis, _cells(tile)):
            writer.writerow([repr(b), *('' if v is None else (v if isinstance(v, str) else repr(v)) for v in row)])

    return _write


def export_tile(
    tile: TileT, path: FilePathType, format: ExportFormat | None = None, func: FuncExceptT | None = None
) -> SPath:
    """
    Write a tile as JSON or CSV.

    Floats are written with their shortest exact representation, so reading the file back
    gives the same bits. The CSV layout is a ``b\\a`` header row of a values, then one row per b.
    The target only ever holds a complete export: the file is written next to it and moved over it.

    :param format:      Output format, guessed from the suffix when None.

    :raises TileIOError:    The format is not a data format.
    """

    func = func or export_tile

    out_path = SPath(str(path)).resolve()
    fmt = ExportFormat(format or out_path.suffix.lstrip('.').lower())

    if fmt is ExportFormat.SVG:
        raise TileIOError('Tiles are exported as json or csv, use the renderers for svg!', func)

    out_path.parent.mkdir(parents=True, exist_ok=True)

    check_perms(out_path, 'w+', func=func)

    _write_atomic(out_path, _write_json(tile) if fmt is ExportFormat.JSON else _write_csv(tile))

    return out_path


def _tile_from_dict(data: dict[str, Any], func: FuncExceptT) -> TileT:
    try:
        grid = Grid(int(data['grid_size']))
        kind = TileKind(data['kind'])
        values = data['values']
        metadata = dict(data.get('metadata') or {})

        if kind is TileKind.ENTITY:
            ids = tuple(data['entities'])
            lookup = {k: i for i, k in enumerate(ids)}

            return EntityTile(grid, [[lookup[v] for v in row] for row in values], ids, data.get('rank'), metadata)

        if kind in {TileKind.HATCH, TileKind.BOUNDARY}:
            return BoolTile(grid, values, kind, metadata)

        return ScalarTile(
            grid, np.array([[np.nan if v is None else v for v in row] for row in values], np.float64), kind, metadata
        )
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise TileIOError('Not a tile document: {error}!', func, error=repr(e)) from None


def import_tile(path: FilePathType, kind: TileKind = TileKind.VALUE) -> TileT:
    """
    Read back a tile written by :py:func:`export_tile`.

    CSV files carry no kind, ``kind`` is used for them and they always load as scalar tiles.

    :raises TileIOError:    The file is not a tile export.
    """

    func = import_tile

    in_path = SPath(str(path)).resolve()

    if not in_path.exists():
        raise FileWasNotFoundError('"{path}" does not exist!', func, path=in_path)

    if in_path.suffix.lower() == '.json':
        try:
            data = json.loads(in_path.read_text(encoding='utf-8'))
        except json.JSONDecodeError as e:
            raise TileIOError('{path} is not valid JSON: {error}!', func, path=in_path, error=e) from None

        return _tile_from_dict(data, func)

    with in_path.open('r', encoding='utf-8', newline='') as f:
        rows = list(csv.reader(f))

    try:
        header, *rows = rows
        values = [[float(v) if v else np.nan for v in row[1:]] for row in rows]
        grid = Grid(len(header) - 1)

        return ScalarTile(grid, np.array(values, np.float64), kind)
    except (ValueError, IndexError) as e:
        raise TileIOError('{path} is not a tile CSV: {error}!', func, path=in_path, error=repr(e)) from None
