import math
from unittest import TestCase

import numpy as np
from hypothesis import given, settings

from tests.helpers import load_sm74, performances, random_performances, unit_floats
from tilekit import (
    AllZeroError, Grid, Importance, InvalidImportanceError, InvalidPriorError, NamedScore, NegativeInputError,
    Performance, UndefinedScoreError, b_from_beta, beta_from_b, f_beta, named_scores, noskill_score, noskill_tile,
    normalize_performance, ranking_score, score_at, score_rows, value_tiles
)


class TestNormalizePerformance(TestCase):
    def test_counts(self) -> None:
        p = normalize_performance(50, 20, 10, 20)

        self.assertEqual(p.as_tuple(), (0.5, 0.2, 0.1, 0.2))
        self.assertEqual(p.prior_pos, 0.30000000000000004)

    def test_negative(self) -> None:
        with self.assertRaises(NegativeInputError):
            normalize_performance(1, -1, 1, 1)

        with self.assertRaises(NegativeInputError):
            normalize_performance(1, math.inf, 1, 1)

    def test_all_zero(self) -> None:
        with self.assertRaises(AllZeroError):
            normalize_performance(0, 0, 0, 0)

    @given(performances)
    def test_sums_to_one(self, p: Performance) -> None:
        self.assertAlmostEqual(math.fsum(p.as_tuple()), 1.0, delta=1e-9)


class TestRankingScore(TestCase):
    def test_corners_match_closed_forms(self) -> None:
        for p in random_performances(200, seed=1):
            tn, fp, fn, tp = p.as_tuple()
            scores = named_scores(p)

            self.assertEqual(scores.tnr, tn / (tn + fp))
            self.assertEqual(scores.tpr, tp / (fn + tp))
            self.assertEqual(scores.npv, tn / (tn + fn))
            self.assertEqual(scores.ppv, tp / (fp + tp))
            self.assertEqual(scores.accuracy, (tn + tp) / (((tn + fp) + fn) + tp))
            self.assertEqual(scores.f1, 2 * tp / ((fp + fn) + 2 * tp))

    def test_undefined_is_nan(self) -> None:
        p = Performance(0.0, 0.0, 0.5, 0.5)

        self.assertTrue(math.isnan(ranking_score(p, NamedScore.TNR)))
        self.assertEqual(ranking_score(p, NamedScore.NPV), 0.0)

    def test_invalid_importance(self) -> None:
        p = normalize_performance(1, 1, 1, 1)

        with self.assertRaises(InvalidImportanceError):
            ranking_score(p, (1.5, 0.0))

        with self.assertRaises(InvalidImportanceError):
            Importance(0.0, -0.1)

    def test_score_at_name(self) -> None:
        p = normalize_performance(4, 1, 2, 3)

        self.assertAlmostEqual(score_at(p, 'accuracy'), 0.7, places=15)
        self.assertEqual(score_at(p, (0.5, 0.5)), score_at(p, NamedScore.ACCURACY))

    def test_score_set_lookup(self) -> None:
        scores = named_scores(normalize_performance(0, 0, 1, 1))

        self.assertEqual(scores['tpr'], 0.5)
        self.assertIsNone(scores.as_dict()['tnr'])

    @given(performances, unit_floats, unit_floats)
    @settings(max_examples=300)
    def test_unit_interval(self, p: Performance, a: float, b: float) -> None:
        s = ranking_score(p, (a, b))

        if not math.isnan(s):
            self.assertGreaterEqual(s, 0.0)
            self.assertLessEqual(s, 1.0)


class TestFBeta(TestCase):
    def test_f1(self) -> None:
        p = normalize_performance(10, 3, 5, 7)

        self.assertEqual(f_beta(p, 0.5), named_scores(p).f1)

    def test_beta_conversions(self) -> None:
        self.assertEqual(beta_from_b(0.5), 1.0)
        self.assertEqual(b_from_beta(1.0), 0.5)
        self.assertEqual(beta_from_b(0.0), 0.0)

        for beta in (0.25, 0.5, 2.0, 4.0):
            self.assertAlmostEqual(beta_from_b(b_from_beta(beta)), beta, places=12)

    def test_general_beta(self) -> None:
        p = normalize_performance(10, 3, 5, 7)
        _, fp, fn, tp = p.as_tuple()

        beta = 2.0
        expected = (1 + beta ** 2) * tp / ((1 + beta ** 2) * tp + beta ** 2 * fn + fp)

        self.assertAlmostEqual(f_beta(p, b_from_beta(beta)), expected, places=12)

    def test_invalid(self) -> None:
        p = normalize_performance(1, 1, 1, 1)

        with self.assertRaises(InvalidImportanceError):
            f_beta(p, 1.0)

        with self.assertRaises(InvalidImportanceError):
            b_from_beta(-1.0)

    def test_undefined(self) -> None:
        with self.assertRaises(UndefinedScoreError):
            f_beta(Performance(1.0, 0.0, 0.0, 0.0), 0.5)


class TestNoSkill(TestCase):
    def test_matches_brute_force(self) -> None:
        rng = np.random.default_rng(7)
        rates = np.linspace(0.0, 1.0, 10001)

        for _ in range(100):
            prior, a, b = rng.uniform(0.01, 0.99), rng.uniform(), rng.uniform()

            matrix = np.stack([(1 - prior) * (1 - rates), (1 - prior) * rates, prior * (1 - rates), prior * rates], 1)
            brute = float(np.nanmax(score_rows(matrix, np.array([a]), np.array([b]))))

            self.assertAlmostEqual(noskill_score(prior, (a, b)), brute, places=12)

    def test_corners(self) -> None:
        self.assertEqual(noskill_score(0.2, NamedScore.TNR), 1.0)
        self.assertEqual(noskill_score(0.2, NamedScore.TPR), 1.0)
        self.assertEqual(noskill_score(0.2, NamedScore.PPV), 0.2)
        self.assertEqual(noskill_score(0.2, NamedScore.NPV), 0.8)

    def test_single_class(self) -> None:
        self.assertEqual(noskill_score(0.0, NamedScore.ACCURACY), 1.0)

        with self.assertRaises(UndefinedScoreError):
            noskill_score(0.0, NamedScore.TPR)

    def test_invalid_prior(self) -> None:
        for prior in (1.5, -0.1, math.nan):
            with self.assertRaises(InvalidPriorError) as ctx:
                noskill_score(prior, NamedScore.ACCURACY)

            self.assertNotIsInstance(ctx.exception, InvalidImportanceError)
            self.assertIn('prior', str(ctx.exception))

        with self.assertRaises(InvalidPriorError):
            noskill_tile(1.5, Grid(5))


class TestScoreRows(TestCase):
    def test_bitwise_equal_to_scalar(self) -> None:
        perfs = random_performances(5, seed=3) + [Performance(0.0, 0.0, 0.5, 0.5)]
        axis = np.arange(21) / 20

        scores = score_rows(np.array([p.as_tuple() for p in perfs]), axis, axis[4:9])

        self.assertEqual(scores.shape, (6, 5, 21))

        for k, p in enumerate(perfs):
            for i, b in enumerate(axis[4:9]):
                for j, a in enumerate(axis):
                    expected = ranking_score(p, (float(a), float(b)))

                    if math.isnan(expected):
                        self.assertTrue(math.isnan(scores[k, i, j]))
                    else:
                        self.assertEqual(scores[k, i, j], expected)


class TestSM74Corners(TestCase):
    def test_corners_match_closed_forms(self) -> None:
        entities = load_sm74()
        tn, fp, fn, tp = entities.sorted().matrix.T

        with np.errstate(divide='ignore', invalid='ignore'):
            expected = {
                NamedScore.TNR: tn / (tn + fp),
                NamedScore.TPR: tp / (fn + tp),
                NamedScore.NPV: tn / (tn + fn),
                NamedScore.PPV: tp / (fp + tp),
                NamedScore.ACCURACY: (tn + tp) / (tn + fp + fn + tp),
                NamedScore.F1: 2 * tp / (fp + fn + 2 * tp)
            }

        tiles = value_tiles(entities, Grid(11))

        self.assertEqual(len(tiles), 74)

        for name, closed in expected.items():
            sampled = np.array([tile.sample(name) for tile in tiles.values()])

            np.testing.assert_allclose(sampled, closed, rtol=1e-12, atol=0, err_msg=str(name))
