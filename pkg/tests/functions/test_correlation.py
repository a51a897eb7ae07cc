import math
from unittest import TestCase

import numpy as np
from scipy import stats

from tests.helpers import random_performances
from tilekit import (
    CorrelationCoef, DegenerateInputError, EntitySet, EntityTile, Grid, NamedScore, ReferenceScores, ScalarTile,
    TileKind, TooFewEntitiesError, correlation, correlation_tile, kendall, kendall_along, pearson, pearson_along,
    ranking_score, spearman, spearman_along, zone_analysis
)


class TestCoefficients(TestCase):
    def setUp(self) -> None:
        rng = np.random.default_rng(21)

        self.x = rng.normal(size=40)
        self.y = 0.5 * self.x + rng.normal(size=40)
        self.tied_x = np.round(self.x)
        self.tied_y = np.round(self.y * 2)

    def test_against_scipy(self) -> None:
        for x, y in ((self.x, self.y), (self.tied_x, self.tied_y)):
            self.assertAlmostEqual(pearson(x, y), stats.pearsonr(x, y)[0], places=12)
            self.assertAlmostEqual(spearman(x, y), stats.spearmanr(x, y)[0], places=12)
            self.assertAlmostEqual(kendall(x, y), stats.kendalltau(x, y)[0], places=12)

    def test_pairwise_deletion(self) -> None:
        x, y = self.tied_x.copy(), self.tied_y.copy()
        x[[3, 17]] = np.nan
        y[[5, 17, 30]] = np.nan

        keep = ~(np.isnan(x) | np.isnan(y))

        for coef, oracle in (
            (CorrelationCoef.PEARSON, stats.pearsonr),
            (CorrelationCoef.SPEARMAN, stats.spearmanr),
            (CorrelationCoef.KENDALL, stats.kendalltau)
        ):
            self.assertAlmostEqual(correlation(x, y, coef), oracle(x[keep], y[keep])[0], places=12)

    def test_columns(self) -> None:
        columns = np.stack([self.y, -self.y, self.tied_y, np.full(40, 2.0)], axis=1)
        columns[7, 2] = np.nan

        for along, scalar in ((pearson_along, pearson), (spearman_along, spearman), (kendall_along, kendall)):
            values = along(self.x, columns)

            self.assertEqual(values.shape, (4, ))
            self.assertTrue(math.isnan(values[3]))

            for k in range(3):
                self.assertAlmostEqual(values[k], scalar(self.x, columns[:, k]), places=12)

    def test_bounds(self) -> None:
        for coef in CorrelationCoef:
            self.assertAlmostEqual(correlation(self.x, self.x, coef), 1.0, places=12)
            self.assertAlmostEqual(correlation(self.x, -self.x, coef), -1.0, places=12)

    def test_degenerate(self) -> None:
        with self.assertRaises(DegenerateInputError):
            pearson(self.x, np.ones(40))

        with self.assertRaises(DegenerateInputError):
            spearman(self.x[:3], self.y)

        with self.assertRaises(DegenerateInputError):
            kendall(np.array([1.0, np.nan, 3.0]), np.array([np.nan, 2.0, 1.0]))


class TestCorrelationTile(TestCase):
    g = Grid(21)

    def setUp(self) -> None:
        self.entities = EntitySet.from_performances({
            f'm{k}': p for k, p in enumerate(random_performances(12, seed=8))
        })
        self.accuracy = {k: ranking_score(r.performance, NamedScore.ACCURACY) for k, r in self.entities.items()}

    def test_reference_score_correlates_at_its_location(self) -> None:
        tile = correlation_tile(self.entities, ReferenceScores(self.accuracy), self.g)

        self.assertEqual(tile.kind, TileKind.CORRELATION)
        self.assertEqual(tile.metadata['coef'], 'spearman')
        self.assertAlmostEqual(tile.sample(NamedScore.ACCURACY), 1.0, places=12)
        self.assertLessEqual(tile.value_range()[1], 1.0)

    def test_rank_coefficients_ignore_monotone_transforms(self) -> None:
        transformed = ReferenceScores({k: math.exp(5 * v) for k, v in self.accuracy.items()})

        for coef in (CorrelationCoef.SPEARMAN, CorrelationCoef.KENDALL):
            np.testing.assert_array_equal(
                correlation_tile(self.entities, ReferenceScores(self.accuracy), self.g, coef).values,
                correlation_tile(self.entities, transformed, self.g, coef).values
            )

    def test_unscored_entities_left_out(self) -> None:
        partial = ReferenceScores({k: v for k, v in list(self.accuracy.items())[:5]})

        tile = correlation_tile(self.entities, partial, self.g, CorrelationCoef.PEARSON)

        self.assertEqual(tile.metadata['entities'], 5)

    def test_too_few(self) -> None:
        with self.assertRaises(TooFewEntitiesError):
            correlation_tile(self.entities, ReferenceScores({'m0': 0.1, 'm1': 0.2, 'other': 0.3}), self.g)


class TestZoneAnalysis(TestCase):
    g = Grid(3)

    def setUp(self) -> None:
        self.rank1 = EntityTile(self.g, [[0, 0, 1], [1, 1, 2], [2, 2, 2]], ('a', 'b', 'c'), rank=1)

    def test_shares(self) -> None:
        corr = ScalarTile(
            self.g, [[0.9, 0.9, 0.9], [0.86, 0.1, 0.2], [0.1, 0.1, 0.99]], TileKind.CORRELATION, {'coef': 'kendall'}
        )

        analysis = zone_analysis(corr, self.rank1)

        self.assertEqual(analysis.coef, CorrelationCoef.KENDALL)
        self.assertEqual(analysis.zone_cells, 5)
        self.assertEqual(analysis.total_cells, 9)
        self.assertEqual([(r.entity_id, r.cells) for r in analysis.rows], [('a', 2), ('b', 2), ('c', 1)])
        self.assertAlmostEqual(analysis.rows[0].share, 0.4)
        self.assertIsNone(analysis.warning)

    def test_empty_zone(self) -> None:
        corr = ScalarTile(self.g, np.full((3, 3), 0.5), TileKind.CORRELATION, {'coef': 'spearman'})

        with self.assertLogs('tilekit', 'WARNING'):
            analysis = zone_analysis(corr, self.rank1, 0.85)

        self.assertTrue(analysis.empty)
        self.assertEqual(analysis.warning, 'There is no zone where rho >= 0.85')
        self.assertEqual(analysis.as_dict()['rows'], [])
