from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterator

from stgpytools import CustomValueError, FilePathType, FileWasNotFoundError, SPath, check_perms

from ..enums import ValueMode
from ..exceptions import EmptyEntitySetError, InfeasibleRepairError, NoMatchingEntitiesError, ParseError
from ..functions import normalize_performance
from ..types import PERFORMANCE_TOLERANCE, EntityRecord, EntitySet, FuncExceptT, Performance, ReferenceScores

__all__ = [
    'PERFORMANCE_COLUMNS',
    'GROUP_GLYPHS',

    'IngestConfig',

    'RowIssue',
    'ValidationReport',

    'normalize_group',

    'load_performances',
    'load_reference_scores',

    'dump_performances'
]

log = logging.getLogger(__name__)

PERFORMANCE_COLUMNS = ('entity', 'group', 'tn', 'fp', 'fn', 'tp')

GROUP_GLYPHS = {
    '♠': 'cityscapes',
    '♥': 'ade20k',
    '♦': 'voc',
    '♣': 'coco'
}
"""Learning-set symbols found in published tables, and the group names they are stored as."""


@dataclass(frozen=True)
class IngestConfig:
    """How a performance table is read."""

    path: FilePathType
    mode: ValueMode = ValueMode.AUTO
    repair_prior: float | None = None
    """Rebuild every row around this positive prior, keeping its tp and fp."""

    tolerance: float = 1e-3
    """Rows of probabilities whose sum is further than this from 1 are flagged."""

    auto_range: tuple[float, float] = (0.5, 1.5)
    """In auto mode, rows whose sum falls in this range are read as probabilities."""

    strict: bool = True
    """Raise on the first row that can not be repaired instead of rejecting it."""

    def __post_init__(self) -> None:
        object.__setattr__(self, 'mode', ValueMode(self.mode))

        if not self.tolerance > 0.0:
            raise CustomValueError('The tolerance must be > 0, got {tol}!', IngestConfig, tol=self.tolerance)

        if self.repair_prior is not None and not 0.0 < self.repair_prior < 1.0:
            raise CustomValueError(
                'The repair prior must lie in (0, 1), got {prior}!', IngestConfig, prior=self.repair_prior
            )


@dataclass(frozen=True, slots=True)
class RowIssue:
    row: int
    entity_id: str
    reason: str
    value: float | None = None


@dataclass
class ValidationReport:
    """What happened to every row of a performance table."""

    path: str
    rows: int = 0
    entities: int = 0
    probability_rows: int = 0
    count_rows: int = 0
    repair_prior: float | None = None
    flagged: list[RowIssue] = field(default_factory=list)
    """Rows of probabilities whose sum deviates from 1 by more than the tolerance."""

    discrepancies: dict[str, float] = field(default_factory=dict)
    """|given tn - rebuilt tn| per entity, when repairing."""

    rejected: list[RowIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.rejected and self.entities > 0

    def as_dict(self) -> dict[str, Any]:
        return {
            'path': self.path,
            'ok': self.ok,
            'rows': self.rows,
            'entities': self.entities,
            'probability_rows': self.probability_rows,
            'count_rows': self.count_rows,
            'repair_prior': self.repair_prior,
            'max_discrepancy': max(self.discrepancies.values(), default=None),
            'flagged': [_issue(i) for i in self.flagged],
            'rejected': [_issue(i) for i in self.rejected],
            'discrepancies': self.discrepancies
        }


def _issue(issue: RowIssue) -> dict[str, Any]:
    return {'row': issue.row, 'entity': issue.entity_id, 'reason': issue.reason, 'value': issue.value}


def normalize_group(group: str | None) -> str | None:
    """Strip a group name, translating learning-set glyphs. Empty groups become None."""

    if group is None or not (group := group.strip()):
        return None

    return GROUP_GLYPHS.get(group, group)


def _rows(path: SPath, required: tuple[str, ...], func: FuncExceptT) -> Iterator[tuple[int, dict[str, str]]]:
    if not path.exists():
        raise FileWasNotFoundError('"{path}" does not exist!', func, path=path)

    with path.open('r', encoding='utf-8-sig', newline='') as f:
        reader = csv.DictReader(f)

        header = [h.strip().lower() for h in reader.fieldnames or ()]

        for column in required:
            if column not in header:
                raise ParseError(func, path, 1, column, '{path}: missing column "{column}" in the header!')

        reader.fieldnames = header

        for row in reader:
            if not any((v or '').strip() for v in row.values() if isinstance(v, str)):
                continue

            yield reader.line_num, row


def _float(value: str | None, path: SPath, row: int, column: str, func: FuncExceptT) -> float:
    try:
        number = float((value or '').strip())
    except ValueError:
        raise ParseError(func, path, row, column) from None

    if not math.isfinite(number) or number < 0.0:
        raise ParseError(
            func, path, row, column, '{path}, row {row}, column {column}: {value} is not a finite value >= 0!',
            value=number
        )

    return number


def _repair(
    values: tuple[float, float, float, float], prior: float
) -> tuple[Performance | None, float, str | None]:
    tn, fp, _, tp = values

    if tp > prior or fp > 1.0 - prior:
        return None, math.nan, f'tp={tp} > {prior} or fp={fp} > {1.0 - prior}'

    rebuilt = Performance((1.0 - prior) - fp, fp, prior - tp, tp)

    return rebuilt, abs(tn - rebuilt.p_tn), None


def load_performances(cfg: IngestConfig) -> tuple[EntitySet, ValidationReport]:
    """
    Read a performance table with the header ``entity,group,tn,fp,fn,tp``.

    Rows are read as counts or probabilities according to ``cfg.mode``. Counts are normalised,
    probabilities within 1e-9 of a unit sum are kept as they are, others are normalised and flagged
    when they miss 1 by more than ``cfg.tolerance``.

    With ``cfg.repair_prior``, each row keeps its tp and fp as read and gets fn and tn rebuilt from the prior.

    :raises ParseError:             A header column or a value can not be read.
    :raises DuplicateEntityError:   Two rows share the same entity id.
    :raises InfeasibleRepairError:  ``cfg.strict`` and a row has tp or fp above what the prior allows.
    :raises EmptyEntitySetError:    No row was accepted.
    """

    func = load_performances
    path = SPath(str(cfg.path)).resolve()

    report = ValidationReport(str(cfg.path), repair_prior=cfg.repair_prior)
    records = list[EntityRecord]()

    low, high = cfg.auto_range

    for line, row in _rows(path, ('entity', 'tn', 'fp', 'fn', 'tp'), func):
        report.rows += 1

        name = (row.get('entity') or '').strip()

        if not name:
            raise ParseError(func, path, line, 'entity', '{path}, row {row}: the entity name is empty!')

        group = normalize_group(row.get('group'))
        entity_id = EntityRecord.make_id(name, group)

        raw = tuple(_float(row.get(c), path, line, c, func) for c in ('tn', 'fp', 'fn', 'tp'))
        total = math.fsum(raw)

        if total == 0.0:
            raise ParseError(func, path, line, 'tn', '{path}, row {row}: all entries are zero!')

        if cfg.mode is ValueMode.PROBABILITIES or (cfg.mode is ValueMode.AUTO and low <= total <= high):
            report.probability_rows += 1

            if abs(total - 1.0) > cfg.tolerance:
                report.flagged.append(RowIssue(line, entity_id, 'sum of probabilities deviates from 1', total))
                log.warning('row %d (%s): probabilities sum to %.6g', line, entity_id, total)

            probabilities = raw
            values = raw if abs(total - 1.0) <= PERFORMANCE_TOLERANCE else normalize_performance(*raw).as_tuple()
        else:
            report.count_rows += 1
            probabilities = values = normalize_performance(*raw).as_tuple()

        if cfg.repair_prior is None:
            performance = Performance(*values)
        else:
            repaired, discrepancy, reason = _repair(probabilities, cfg.repair_prior)  # type: ignore[arg-type]

            if repaired is None:
                if cfg.strict:
                    raise InfeasibleRepairError(func, entity_id, cfg.repair_prior)

                report.rejected.append(RowIssue(line, entity_id, f'infeasible repair: {reason}'))
                log.warning('row %d (%s) rejected: infeasible repair, %s', line, entity_id, reason)
                continue

            performance = repaired
            report.discrepancies[entity_id] = discrepancy

        records.append(EntityRecord(entity_id, performance, group))

    if not records:
        raise EmptyEntitySetError(func, '{path} holds no usable performance!', path=path)

    entities = EntitySet(records, func=func)
    report.entities = len(entities)

    log.info('loaded %d entities from %s', len(entities), path.name)

    return entities, report


def load_reference_scores(path: FilePathType, entities: EntitySet) -> ReferenceScores:
    """
    Read external scores from a CSV with an ``entity`` and a ``score`` column, and an optional ``group``.

    Ids that match no entity are kept aside in ``ReferenceScores.unmatched`` and logged.

    :raises ParseError:                 A score can not be read.
    :raises NoMatchingEntitiesError:    No id matches an entity.
    """

    func = load_reference_scores
    spath = SPath(str(path)).resolve()

    scores = dict[str, float]()
    unmatched = list[str]()

    if not spath.exists():
        raise FileWasNotFoundError('"{path}" does not exist!', func, path=spath)

    if spath.stat().st_size > 0:
        for line, row in _rows(spath, ('entity', 'score'), func):
            entity_id = EntityRecord.make_id((row.get('entity') or '').strip(), normalize_group(row.get('group')))

            try:
                value = float((row.get('score') or '').strip())
            except ValueError:
                raise ParseError(func, spath, line, 'score') from None

            if not math.isfinite(value):
                raise ParseError(func, spath, line, 'score', '{path}, row {row}: the score must be finite!')

            if entity_id in entities:
                scores[entity_id] = value
            else:
                unmatched.append(entity_id)

    if not scores:
        raise NoMatchingEntitiesError(func, spath)

    if unmatched:
        log.warning('%d reference ids match no entity: %s', len(unmatched), ', '.join(unmatched))

    return ReferenceScores(scores, tuple(unmatched))


def dump_performances(entities: EntitySet, path: FilePathType, func: FuncExceptT | None = None) -> None:
    """Write entities as probabilities, in the format read by :py:func:`load_performances`."""

    func = func or dump_performances

    out_path = SPath(str(path)).resolve()
    out_path.parent.mkdir(parents=True, exist_ok=True)

    check_perms(out_path, 'w+', func=func)

    with out_path.open('w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(PERFORMANCE_COLUMNS)

        for record in entities.records:
            writer.writerow([record.name, record.group or '', *map(repr, record.performance.as_tuple())])
