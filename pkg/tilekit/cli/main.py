from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Any, Sequence

from stgpytools import CustomError, SPath

from .._metadata import __version__
from ..enums import (
    CorrelationCoef, DistributionKind, ExportFormat, NamedScore, SelectionStrategy, ValueMethod, ValueMode
)
from ..functions import (
    WorkerConfig, baseline_tile, behavior_tile, correlation_tile, entity_score_tile, entity_tile, hatch_mask,
    noskill_tile, rank_tile, ranking_cube, relative_skill_tile, select_at, select_by_reference, select_minimax,
    sota_tile, value_tile, zone_analysis
)
from ..render import RenderOptions, build_report, render_entity_map, render_heatmap, save_figure
from ..types import (
    DEFAULT_GRID_SIZE, BoolTile, EntitySet, EntityTile, Grid, Importance, PerformanceDistribution,
    ReferenceScores, ScalarTile
)
from ..utils import IngestConfig, export_tile, load_performances, load_reference_scores, setup_logging, tile_to_dict

__all__ = [
    'UsageError',

    'build_parser',

    'run',
    'main'
]

log = logging.getLogger(__name__)

TILE_KINDS = ('value', 'baseline', 'sota', 'noskill', 'skill', 'ranking', 'entity', 'correlation')


class UsageError(Exception):
    """Raised when the arguments parse but do not make sense together."""


def _grid_size(value: str) -> int:
    size = int(value)

    if size < 2:
        raise argparse.ArgumentTypeError(f'grid size must be >= 2, got {size}')

    return size


def _seed(value: str) -> int:
    seed = int(value)

    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError(f'seed must be a 64-bit unsigned integer, got {seed}')

    return seed


def _threads(value: str) -> int:
    threads = int(value)

    if threads < 1:
        raise argparse.ArgumentTypeError(f'thread count must be >= 1, got {threads}')

    return threads


def _unit(value: str) -> float:
    number = float(value)

    if not 0.0 <= number <= 1.0:
        raise argparse.ArgumentTypeError(f'{number} is not in [0, 1]')

    return number


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)

    io = common.add_argument_group('input and output')
    io.add_argument('--input', '-i', help='performance table, CSV with entity,group,tn,fp,fn,tp')
    io.add_argument('--mode', choices=[str(m) for m in ValueMode], default=str(ValueMode.AUTO),
                    help='whether the table holds counts or probabilities (default: %(default)s)')
    io.add_argument('--repair-prior', type=float, help='rebuild fn and tn of every row around this positive prior')
    io.add_argument('--scores', help='reference scores, CSV with entity,score and an optional group')
    io.add_argument('--out', '-o', help='output file, or directory for reports')
    io.add_argument('--format', choices=[str(f) for f in ExportFormat], help='output format, default from --out')
    io.add_argument('--png', action='store_true', help='also write PNG next to every SVG')

    compute = common.add_argument_group('computation')
    compute.add_argument('--grid-size', '-g', type=_grid_size, default=DEFAULT_GRID_SIZE,
                         help='values per axis (default: %(default)s)')
    compute.add_argument('--method', choices=[str(m) for m in ValueMethod], default=str(ValueMethod.DIRECT),
                         help='value tile construction (default: %(default)s)')
    compute.add_argument('--coef', choices=[str(c) for c in CorrelationCoef], default=str(CorrelationCoef.SPEARMAN),
                         help='correlation coefficient (default: %(default)s)')
    compute.add_argument('--threshold', type=float,
                         help='correlation threshold of the zone analysis (default: 0.85)')
    compute.add_argument('--seed', type=_seed, default=0, help='Monte-Carlo seed (default: %(default)s)')
    compute.add_argument('--threads', '-t', type=_threads, help='worker threads (default: $TILEKIT_THREADS or 1)')

    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', '-v', action='count', default=0, help='more diagnostics, repeatable')
    verbosity.add_argument('--quiet', '-q', action='store_true', help='errors only, no progress bars')

    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()

    parser = argparse.ArgumentParser(
        prog='tilekit', description='Evaluate, rank and select two-class classifiers over the Tile.'
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')

    commands = parser.add_subparsers(dest='command', required=True, metavar='command')

    commands.add_parser('validate', parents=[common], help='read a performance table and report on every row')

    tile = commands.add_parser('tile', parents=[common], help='compute one tile')
    tile.add_argument('kind', choices=TILE_KINDS)
    tile.add_argument('--entity', '-e', help='entity id, for value and ranking tiles')
    tile.add_argument('--rank', '-r', type=int, default=1, help='rank of an entity tile (default: %(default)s)')
    tile.add_argument('--prior', type=_unit, help='positive prior of a no-skill tile (default: mean prior)')

    select = commands.add_parser('select', parents=[common], help='select one entity')
    select.add_argument('--strategy', '-s', choices=[str(s) for s in SelectionStrategy], required=True)
    select.add_argument('--a', type=_unit, help='importance a, for the at strategy')
    select.add_argument('--b', type=_unit, help='importance b, for the at strategy')

    commands.add_parser('report', parents=[common], help='write every tile and the analysis to a directory')

    behavior = commands.add_parser('behavior', parents=[common], help='correlate one score with the whole Tile')
    behavior.add_argument('--score', choices=[str(s) for s in NamedScore], help='studied score')
    behavior.add_argument('--a', type=_unit, help='importance a of the studied score')
    behavior.add_argument('--b', type=_unit, help='importance b of the studied score')
    behavior.add_argument(
        '--dist', choices=[str(d) for d in DistributionKind], default=str(DistributionKind.UNIFORM_ALL),
        help='performance distribution (default: %(default)s)'
    )
    behavior.add_argument('--samples', type=int, default=10_000, help='Monte-Carlo samples (default: %(default)s)')
    behavior.add_argument('--prior', type=_unit, help='positive prior of the fixed-prior distribution')
    behavior.add_argument(
        '--shared-samples', action='store_true', help='draw one sample for the whole grid instead of one per node'
    )

    return parser


class _Context:
    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.grid = Grid(args.grid_size)
        self.workers = WorkerConfig(args.threads)
        self.opts = RenderOptions(png=args.png)

        self._entities: EntitySet | None = None

    @property
    def entities(self) -> EntitySet:
        if self._entities is None:
            if not self.args.input:
                raise UsageError(f'{self.args.command} needs --input')

            self._entities, _ = load_performances(IngestConfig(
                self.args.input, ValueMode(self.args.mode), self.args.repair_prior
            ))

        return self._entities

    def reference(self) -> ReferenceScores:
        if not self.args.scores:
            raise UsageError(f'{self.args.command} needs --scores')

        return load_reference_scores(self.args.scores, self.entities)

    def mean_prior(self) -> float:
        return math.fsum(r.performance.prior_pos for r in self.entities.records) / len(self.entities)

    def emit(
        self, tile: ScalarTile | EntityTile, hatch: BoolTile | None = None, extra: dict[str, Any] | None = None
    ) -> None:
        """Tile to --out, or as JSON to stdout with ``extra`` merged in; ``extra`` goes to stdout alone otherwise."""

        out, fmt = self.args.out, self.args.format

        if out is None:
            if fmt not in {None, str(ExportFormat.JSON)}:
                raise UsageError(f'--format {fmt} needs --out')

            print(json.dumps(tile_to_dict(tile) | (extra or {}), ensure_ascii=False))

            return

        fmt = ExportFormat(fmt or SPath(out).suffix.lstrip('.').lower() or ExportFormat.JSON)

        if fmt is ExportFormat.SVG:
            if isinstance(tile, EntityTile):
                fig = render_entity_map(tile, self.opts, hatch)
            else:
                fig = render_heatmap(tile, hatch, opts=self.opts)

            paths = save_figure(fig, out, self.opts)
        else:
            paths = [export_tile(tile, out, fmt)]

        for path in paths:
            log.info('wrote %s', path)

        if extra:
            print(json.dumps(extra, ensure_ascii=False))


def _validate(ctx: _Context) -> int:
    args = ctx.args

    if not args.input:
        raise UsageError('validate needs --input')

    cfg = IngestConfig(args.input, ValueMode(args.mode), args.repair_prior, strict=False)
    entities, report = load_performances(cfg)

    print(json.dumps(report.as_dict() | {'entity_ids': list(entities.sorted_ids)}, indent=2, ensure_ascii=False))

    return 0 if report.ok else 1


def _needs_entity(ctx: _Context) -> str:
    if not ctx.args.entity:
        raise UsageError(f'tile {ctx.args.kind} needs --entity')

    return str(ctx.entities[ctx.args.entity].entity_id)


def _tile(ctx: _Context) -> int:
    args, g, workers = ctx.args, ctx.grid, ctx.workers
    kind = args.kind

    hatch: BoolTile | None = None
    extra: dict[str, Any] | None = None
    tile: ScalarTile | EntityTile

    if kind == 'value':
        eid = _needs_entity(ctx)
        p = ctx.entities[eid].performance

        tile = value_tile(p, g, ValueMethod(args.method), workers=workers, entity_id=eid)
        hatch = hatch_mask(tile, noskill_tile(p.prior_pos, g, workers))
    elif kind == 'baseline':
        tile = baseline_tile(ctx.entities, g, workers)
    elif kind == 'sota':
        tile = sota_tile(ctx.entities, g, workers)
    elif kind == 'noskill':
        if args.prior is not None:
            prior = args.prior
        elif args.entity:
            prior = ctx.entities[args.entity].performance.prior_pos
        else:
            prior = ctx.mean_prior()

        tile = noskill_tile(prior, g, workers)
    elif kind == 'skill':
        prior = ctx.mean_prior() if args.prior is None else args.prior
        tile = relative_skill_tile(sota_tile(ctx.entities, g, workers), noskill_tile(prior, g, workers))
    elif kind == 'ranking':
        eid = _needs_entity(ctx)
        tile = rank_tile(ranking_cube(ctx.entities, g, workers), eid)
    elif kind == 'entity':
        cube = ranking_cube(ctx.entities, g, workers)
        tile = entity_tile(cube, args.rank, workers)

        if args.rank in {1, len(cube)}:
            hatch = hatch_mask(entity_score_tile(ctx.entities, tile, workers), noskill_tile(ctx.mean_prior(), g))
    else:
        tile = correlation_tile(ctx.entities, ctx.reference(), g, CorrelationCoef(args.coef), workers)

        rank1 = entity_tile(ranking_cube(ctx.entities, g, workers), 1, workers)
        zones = zone_analysis(tile, rank1, 0.85 if args.threshold is None else args.threshold)

        extra = {'zones': zones.as_dict()}

    ctx.emit(tile, hatch, extra)

    return 0


def _select(ctx: _Context) -> int:
    args, g, workers = ctx.args, ctx.grid, ctx.workers
    strategy = SelectionStrategy(args.strategy)

    cube = ranking_cube(ctx.entities, g, workers)

    if strategy is SelectionStrategy.AT:
        if args.a is None or args.b is None:
            raise UsageError('select --strategy at needs --a and --b')

        point = g.snap(Importance(args.a, args.b))

        if point.distance > 0.0:
            print(
                f'note: (a={args.a:g}, b={args.b:g}) snapped to the grid node '
                f'(a={point.importance.a:g}, b={point.importance.b:g})', file=sys.stderr
            )

        selection = select_at(cube, point.importance)
    elif strategy is SelectionStrategy.MINIMAX:
        selection = select_minimax(cube)
    else:
        corr = correlation_tile(ctx.entities, ctx.reference(), g, CorrelationCoef(args.coef), workers)
        selection = select_by_reference(corr, entity_tile(cube, 1, workers), args.threshold)

    if args.format == str(ExportFormat.JSON):
        print(json.dumps(selection.as_dict(), indent=2, ensure_ascii=False))
    else:
        print(selection.summary())

    return 0


def _report(ctx: _Context) -> int:
    args = ctx.args

    manifest = build_report(
        ctx.entities, ctx.reference() if args.scores else None, ctx.grid, args.out or 'report', ctx.opts,
        ctx.workers, (CorrelationCoef(args.coef), ), 0.85 if args.threshold is None else args.threshold,
        ValueMethod(args.method)
    )

    print(manifest.out_dir / 'index.md')

    return 0


def _behavior(ctx: _Context) -> int:
    args = ctx.args
    kind = DistributionKind(args.dist)

    if args.score is not None:
        score: NamedScore | Importance = NamedScore(args.score)
    elif args.a is not None and args.b is not None:
        score = Importance(args.a, args.b)
    else:
        raise UsageError('behavior needs --score, or --a and --b')

    prior = args.prior

    if kind is DistributionKind.UNIFORM_FIXED_PRIOR and prior is None:
        prior = ctx.mean_prior()

    dist = PerformanceDistribution(
        kind, prior, ctx.entities if kind is DistributionKind.EMPIRICAL else None, args.samples, args.seed
    )

    ctx.emit(behavior_tile(score, dist, ctx.grid, CorrelationCoef(args.coef), ctx.workers, args.shared_samples))

    return 0


_COMMANDS = {
    'validate': _validate,
    'tile': _tile,
    'select': _select,
    'report': _report,
    'behavior': _behavior
}


def run(argv: Sequence[str] | None = None) -> int:
    """
    Run one command line.

    :return:    0 on success, 1 when an input is invalid or a computation fails, 2 on usage errors.
    """

    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(-1 if args.quiet else args.verbose)

    try:
        return _COMMANDS[args.command](_Context(args))
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f'tilekit: error: {e}', file=sys.stderr)

        return 2
    except CustomError as e:
        print(f'tilekit: {e}', file=sys.stderr)

        return 1
    except OSError as e:
        print(f'tilekit: {e}', file=sys.stderr)

        return 1


def main() -> int:
    return run(sys.argv[1:])
