from unittest import TestCase

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.helpers import entity_set, load_sm74, random_performances
from tilekit import (
    EmptyEntitySetError, EntitySet, Grid, NamedScore, RankOutOfRangeError, TileKind, UnknownEntityError,
    WorkerConfig, area_share, competition_ranks, entity_tile, normalize_performance, rank_stats, rank_stats_all,
    rank_tile, ranking_cube, ranking_score
)


class TestCompetitionRanks(TestCase):
    def test_ties_share_the_smallest_rank(self) -> None:
        ranks = competition_ranks(np.array([0.5, 0.9, 0.5, 0.1]))

        self.assertEqual(ranks.tolist(), [2, 1, 2, 4])

    def test_undefined_last(self) -> None:
        ranks = competition_ranks(np.array([np.nan, 0.2, np.nan, 0.3]))

        self.assertEqual(ranks.tolist(), [3, 2, 3, 1])

    def test_along_first_axis(self) -> None:
        scores = np.array([[[0.1, 0.9]], [[0.8, 0.9]], [[0.3, 0.0]]])

        self.assertEqual(competition_ranks(scores).tolist(), [[[3, 1]], [[1, 1]], [[2, 3]]])

    def test_input_untouched(self) -> None:
        scores = np.array([np.nan, 1.0])

        competition_ranks(scores)

        self.assertTrue(np.isnan(scores[0]))


class TestRankingCube(TestCase):
    g = Grid(31)

    def setUp(self) -> None:
        self.entities = EntitySet.from_performances({
            f'm{k:02d}': p for k, p in enumerate(random_performances(8, seed=9))
        })
        self.cube = ranking_cube(self.entities, self.g)

    def test_shape_and_order(self) -> None:
        self.assertEqual(self.cube.ranks.shape, (8, 31, 31))
        self.assertEqual(self.cube.entity_ids, self.entities.sorted_ids)

    def test_ranks_match_scores(self) -> None:
        i, j = self.g.snap(NamedScore.ACCURACY)[:2]
        scores = {k: ranking_score(r.performance, NamedScore.ACCURACY) for k, r in self.entities.items()}

        for k, score in scores.items():
            expected = 1 + sum(s > score for s in scores.values())

            self.assertEqual(int(self.cube.ranks_of(k)[i, j]), expected)

    def test_input_order_irrelevant(self) -> None:
        shuffled = self.entities.subset(reversed(self.entities.ids))

        np.testing.assert_array_equal(ranking_cube(shuffled, self.g).ranks, self.cube.ranks)

    def test_threads_irrelevant(self) -> None:
        threaded = ranking_cube(self.entities, self.g, WorkerConfig(threads=4, rows_per_chunk=5))

        np.testing.assert_array_equal(threaded.ranks, self.cube.ranks)

    def test_ranks_read_only(self) -> None:
        with self.assertRaises(ValueError):
            self.cube.ranks[0, 0, 0] = 1

    def test_every_node_has_a_first(self) -> None:
        self.assertTrue((self.cube.ranks.min(axis=0) == 1).all())

    def test_subset_keeps_relative_order(self) -> None:
        ids = self.entities.sorted_ids[:4]
        small = ranking_cube(self.entities.subset(ids), self.g)

        for a in ids:
            for b in ids:
                before = self.cube.ranks_of(a) < self.cube.ranks_of(b)
                after = small.ranks_of(a) < small.ranks_of(b)

                np.testing.assert_array_equal(before, after)

    def test_empty(self) -> None:
        with self.assertRaises(EmptyEntitySetError):
            ranking_cube(EntitySet(), self.g)


class TestSubsetStability(TestCase):
    g = Grid(51)

    @classmethod
    def setUpClass(cls) -> None:
        cls.entities = load_sm74()
        cls.cube = ranking_cube(cls.entities, cls.g)

    @given(
        st.lists(st.integers(0, 73), min_size=2, max_size=30, unique=True),
        st.lists(st.tuples(st.integers(0, 50), st.integers(0, 50)), min_size=50, max_size=50)
    )
    @settings(max_examples=20, deadline=None)
    def test_sm74_subsets_keep_order(self, picks: list[int], points: list[tuple[int, int]]) -> None:
        small = ranking_cube(self.entities.subset(self.cube.entity_ids[k] for k in picks), self.g)
        ii, jj = np.array(points).T

        full = np.stack([self.cube.ranks_of(k)[ii, jj] for k in small.entity_ids]).astype(np.int64)
        part = small.ranks[:, ii, jj].astype(np.int64)

        np.testing.assert_array_equal(np.sign(full[:, None] - full[None]), np.sign(part[:, None] - part[None]))


class TestRankTiles(TestCase):
    g = Grid(21)

    def setUp(self) -> None:
        self.entities = EntitySet.from_performances({
            f'm{k}': p for k, p in enumerate(random_performances(5, seed=12))
        })
        self.cube = ranking_cube(self.entities, self.g)

    def test_rank_tile(self) -> None:
        tile = rank_tile(self.cube, 'm3')

        self.assertEqual(tile.kind, TileKind.RANKING)
        self.assertEqual(tile.entity_id, 'm3')
        np.testing.assert_array_equal(tile.values, self.cube.ranks_of('m3'))

        with self.assertRaises(UnknownEntityError):
            rank_tile(self.cube, 'nope')

    def test_entity_tile_holds_the_rank(self) -> None:
        for rank in range(1, 6):
            tile = entity_tile(self.cube, rank)

            self.assertEqual(tile.rank, rank)

            for i in range(0, 21, 4):
                for j in range(0, 21, 4):
                    held = self.cube.ranks_of(tile.entity_at(i, j))[i, j]

                    self.assertLessEqual(held, rank)

    def test_entity_tiles_partition(self) -> None:
        tiles = [entity_tile(self.cube, r).cells for r in range(1, 6)]

        for i in range(21):
            for j in range(21):
                self.assertEqual(sorted(t[i, j] for t in tiles), list(self.cube.entity_ids))

    def test_rank_out_of_range(self) -> None:
        for rank in (0, 6):
            with self.assertRaises(RankOutOfRangeError):
                entity_tile(self.cube, rank)

    def test_area_share(self) -> None:
        shares = area_share(entity_tile(self.cube, 1))

        self.assertAlmostEqual(sum(shares.values()), 1.0, places=12)
        self.assertEqual(list(shares), sorted(shares))


class TestTies(TestCase):
    def test_identical_entities(self) -> None:
        entities = entity_set((1, 2, 3, 4), (1, 2, 3, 4), (4, 3, 2, 1))
        cube = ranking_cube(entities, Grid(11))

        np.testing.assert_array_equal(cube.ranks_of('e0'), cube.ranks_of('e1'))

        first, second = entity_tile(cube, 1), entity_tile(cube, 2)
        tied = cube.ranks_of('e0') == 1

        self.assertTrue((first.cells[tied] == 'e0').all())
        self.assertTrue((second.cells[tied] == 'e1').all())


class TestRankStats(TestCase):
    def test_dominant_entity(self) -> None:
        entities = EntitySet.from_performances({
            'good': normalize_performance(45, 5, 5, 45),
            'bad': normalize_performance(30, 20, 20, 30)
        })
        cube = ranking_cube(entities, Grid(11))

        stats = rank_stats(cube, 'good')

        self.assertEqual((stats.min_rank, stats.max_rank, stats.mean_rank), (1, 1, 1.0))
        self.assertEqual([s.entity_id for s in rank_stats_all(cube)], ['good', 'bad'])
        self.assertEqual(rank_stats(cube, 'bad').max_rank, 2)
