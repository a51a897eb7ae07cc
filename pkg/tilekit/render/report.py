from __future__ import annotations

import hashlib
import json
import logging
import math
import re
from dataclasses import dataclass, field
from typing import Any, Iterable

from matplotlib.figure import Figure
from stgpytools import FilePathType, SPath, check_perms

from ..enums import CorrelationCoef, ValueMethod
from ..functions import (
    WorkerConfigT, area_share, baseline_tile, correlation_tile, entity_boundaries, entity_score_tile, entity_tile,
    get_progress, hatch_mask, noskill_tile, rank_stats_all, rank_tile, ranking_cube, relative_skill_tile,
    select_by_reference, select_minimax, sota_tile, value_tile, zone_analysis
)
from ..exceptions import EmptyEntitySetError
from ..types import EntitySet, Grid, ReferenceScores
from ..utils import TileT, dump_performances, export_tile
from .base import RenderOptions, save_figure
from .entity_map import render_entity_map
from .heatmap import render_heatmap
from .roc import roc_points, roc_scatter

__all__ = [
    'Artifact',
    'ReportManifest',

    'slugify',
    'report_ranks',

    'build_report'
]

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Artifact:
    path: str
    """Path relative to the report directory, with forward slashes."""

    kind: str
    sha256: str

    def as_dict(self) -> dict[str, str]:
        return {'path': self.path, 'kind': self.kind, 'sha256': self.sha256}


@dataclass
class ReportManifest:
    """Everything a report run wrote, in section order."""

    out_dir: SPath
    artifacts: list[Artifact] = field(default_factory=list)
    inputs: dict[str, Any] = field(default_factory=dict)
    analysis: dict[str, Any] = field(default_factory=dict)

    def __getitem__(self, path: str) -> Artifact:
        for artifact in self.artifacts:
            if artifact.path == path:
                return artifact

        raise KeyError(path)

    def paths(self, kind: str | None = None) -> list[str]:
        return [a.path for a in self.artifacts if kind is None or a.kind == kind]

    def as_dict(self) -> dict[str, Any]:
        return {'artifacts': [a.as_dict() for a in self.artifacts], 'inputs': self.inputs}


def slugify(text: str) -> str:
    """File name friendly version of an entity id."""

    return re.sub(r'[^a-z0-9]+', '-', text.lower()).strip('-') or 'entity'


def _slugs(ids: Iterable[str]) -> dict[str, str]:
    slugs = dict[str, str]()
    taken = set[str]()

    for eid in ids:
        slug = base = slugify(eid)
        k = 2

        while slug in taken:
            slug, k = f'{base}-{k}', k + 1

        slugs[eid] = slug
        taken.add(slug)

    return slugs


def report_ranks(count: int) -> list[int]:
    """Ranks that get an entity tile: the first three and the last."""

    return sorted({r for r in (1, 2, 3, count) if 1 <= r <= count})


def _sha256(path: SPath) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class _ReportWriter:
    def __init__(self, manifest: ReportManifest, opts: RenderOptions) -> None:
        self.manifest = manifest
        self.opts = opts
        self.sections = list[tuple[str, list[tuple[str, str]]]]()

    def section(self, title: str) -> None:
        self.sections.append((title, []))

    def add(self, path: SPath, kind: str, label: str | None) -> str:
        rel = path.relative_to(self.manifest.out_dir).as_posix()

        self.manifest.artifacts.append(Artifact(rel, kind, _sha256(path)))

        if label is not None:
            self.sections[-1][1].append((label, rel))

        return rel

    def figure(self, fig: Figure, rel: str, label: str) -> None:
        written = save_figure(fig, self.manifest.out_dir / rel, self.opts, build_report)

        self.add(written[0], 'figure', label)

        for extra in written[1:]:
            self.add(extra, 'raster', None)

    def tile(self, tile: TileT, rel: str) -> None:
        self.add(export_tile(tile, self.manifest.out_dir / rel, func=build_report), 'data', f'{rel} (data)')

    def document(self, document: Any, rel: str, kind: str, label: str | None = None) -> None:
        path = self.manifest.out_dir / rel
        path.write_text(json.dumps(document, indent=2, ensure_ascii=False) + '\n', encoding='utf-8')

        self.add(path, kind, label)

    def index(self) -> None:
        lines = ['# tilekit report', '']

        for title, entries in self.sections:
            lines += [f'## {title}', '']
            lines += [
                f'![{label}]({rel})' if rel.endswith('.svg') else f'- [{label}]({rel})' for label, rel in entries
            ]
            lines.append('')

        path = self.manifest.out_dir / 'index.md'
        path.write_text('\n'.join(lines), encoding='utf-8')

        self.add(path, 'index', None)


def build_report(
    entities: EntitySet,
    ref: ReferenceScores | None = None,
    g: Grid = Grid(),
    out_dir: FilePathType = 'report',
    opts: RenderOptions = RenderOptions(),
    workers: WorkerConfigT = None,
    coefs: Iterable[CorrelationCoef] = (CorrelationCoef.SPEARMAN, ),
    threshold: float = 0.85,
    method: ValueMethod = ValueMethod.DIRECT
) -> ReportManifest:
    """
    Compute and draw every tile of an entity set into a report directory.

    Sections come in this order: the performance table, the ROC plot, the value tile of every entity,
    the baseline and state-of-the-art tiles, the no-skill and relative-skill tiles, the ranking tile of
    every entity, the entity tiles of ranks 1, 2, 3 and N, the correlation tiles when reference scores are
    given, and the selection analysis. ``index.md`` links the figures in that order and ``manifest.json``
    lists every file with its checksum.

    The output only depends on the inputs: two runs write identical bytes, whatever the thread count.

    :param ref:         Reference scores, enabling correlation tiles, reference selection and zone analysis.
    :param coefs:       Coefficients of the correlation tiles, the first one drives the selection.
    :param threshold:   Correlation threshold of the zone analysis.

    :raises EmptyEntitySetError:    No entity.
    :raises FilePermissionError:    The directory can not be written.
    """

    func = build_report

    if not len(entities):
        raise EmptyEntitySetError(func)

    entities = entities.sorted()
    coefs = [CorrelationCoef(c) for c in coefs]
    method = ValueMethod(method)

    root = SPath(str(out_dir)).resolve()
    root.mkdir(parents=True, exist_ok=True)

    check_perms(root, 'w+', func=func)

    manifest = ReportManifest(root)
    writer = _ReportWriter(manifest, opts)
    slugs = _slugs(entities.sorted_ids)
    count = len(entities)

    priors = sorted({r.performance.prior_pos for r in entities.records})
    mean_prior = math.fsum(r.performance.prior_pos for r in entities.records) / count

    if len(priors) > 1:
        log.warning(
            'entities have %d different priors (%.6g to %.6g), the no-skill tile uses their mean %.6g',
            len(priors), priors[0], priors[-1], mean_prior
        )

    ranks = report_ranks(count)
    figures = 1 + 2 * count + 4 + len(ranks) + (len(coefs) if ref is not None else 0)

    log.info('building a report of %d entities on a %dx%d grid in %s', count, g.size, g.size, root)

    cube = ranking_cube(entities, g, workers)
    noskill = noskill_tile(mean_prior, g, workers)

    with get_progress('Report', figures) as progress:
        writer.section('Performances')

        dump_performances(entities, root / 'performances.csv', func)
        writer.add(root / 'performances.csv', 'table', 'performances.csv')

        points, skipped = roc_points(entities)

        if points:
            writer.figure(roc_scatter(entities, opts), 'roc.svg', 'ROC')
        progress.update()

        writer.section('Value tiles')

        noskill_at = {mean_prior: noskill}

        for eid in entities.sorted_ids:
            p = entities[eid].performance

            if p.prior_pos not in noskill_at:
                noskill_at[p.prior_pos] = noskill_tile(p.prior_pos, g, workers)

            tile = value_tile(p, g, method, workers=workers, entity_id=eid)
            hatch = hatch_mask(tile, noskill_at[p.prior_pos])

            writer.figure(render_heatmap(tile, hatch, opts=opts), f'values/{slugs[eid]}.svg', eid)
            progress.update()

        writer.section('Baseline and state of the art')

        first, last = entity_tile(cube, 1, workers), entity_tile(cube, count, workers)

        baseline, sota = baseline_tile(entities, g, workers), sota_tile(entities, g, workers)

        for name, tile, edges in (('baseline', baseline, last), ('sota', sota, first)):
            writer.figure(render_heatmap(tile, opts=opts, boundaries=entity_boundaries(edges)), f'{name}.svg', name)
            writer.tile(tile, f'{name}.json')
            progress.update()

        writer.section('No-skill and relative skill')

        skill = relative_skill_tile(sota, noskill)

        for name, tile in (('noskill', noskill), ('skill', skill)):
            writer.figure(render_heatmap(tile, opts=opts), f'{name}.svg', name)
            writer.tile(tile, f'{name}.json')
            progress.update()

        writer.section('Ranking tiles')

        for eid in entities.sorted_ids:
            writer.figure(render_heatmap(rank_tile(cube, eid), opts=opts), f'ranking/{slugs[eid]}.svg', eid)
            progress.update()

        writer.section('Entity tiles')

        shares = dict[str, dict[str, float]]()

        for rank in ranks:
            tile = first if rank == 1 else last if rank == count else entity_tile(cube, rank, workers)
            hatch = hatch_mask(entity_score_tile(entities, tile, workers), noskill) if rank in {1, count} else None

            shares[str(rank)] = area_share(tile)

            writer.figure(render_entity_map(tile, opts, hatch), f'entity/rank-{rank}.svg', f'rank {rank}')
            writer.tile(tile, f'entity/rank-{rank}.json')
            progress.update()

        minimax = select_minimax(cube)
        reference: dict[str, Any] | None = None
        zones = list[dict[str, Any]]()

        if ref is not None:
            writer.section('Correlation tiles')

            for k, coef in enumerate(coefs):
                corr = correlation_tile(entities, ref, g, coef, workers)

                writer.figure(render_heatmap(corr, opts=opts), f'correlation/{coef}.svg', str(coef))
                writer.tile(corr, f'correlation/{coef}.json')
                progress.update()

                zones.append(zone_analysis(corr, first, threshold).as_dict())

                if k == 0:
                    reference = select_by_reference(corr, first).as_dict()

        analysis = {
            'grid_size': g.size,
            'entities': count,
            'noskill_prior': mean_prior,
            'roc_skipped': skipped,
            'rank_stats': [s.as_dict() for s in rank_stats_all(cube)],
            'area_shares': shares,
            'selection': {'minimax': minimax.as_dict(), 'reference': reference},
            'zones': zones
        }

        writer.section('Analysis')
        writer.document(analysis, 'analysis.json', 'analysis', 'analysis.json')

        manifest.analysis = analysis

    writer.index()

    manifest.inputs = {
        'entities': list(entities.sorted_ids),
        'performances_sha256': manifest['performances.csv'].sha256,
        'reference': None if ref is None else {k: ref[k] for k in sorted(ref)},
        'grid_size': g.size,
        'method': str(method),
        'coefs': [str(c) for c in coefs],
        'threshold': threshold,
        'render': {
            'colormap': opts.colormap, 'contour_levels': list(opts.contour_levels),
            'hatch_density': opts.hatch_density, 'size': list(opts.size), 'dpi': opts.dpi,
            'max_cells': opts.max_cells, 'png': opts.png
        }
    }

    manifest_path = root / 'manifest.json'
    manifest_path.write_text(json.dumps(manifest.as_dict(), indent=2, ensure_ascii=False) + '\n', encoding='utf-8')

    log.info('report written: %d artifacts', len(manifest.artifacts))

    return manifest
