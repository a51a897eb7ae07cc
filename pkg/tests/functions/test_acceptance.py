from unittest import TestCase

import numpy as np
import pytest

from tests.helpers import RANK1_SHARES, load_sm74
from tilekit import (
    Grid, area_share, entity_score_tile, entity_tile, rank_stats, rank_tile, ranking_cube, select_minimax, sota_tile
)

SETR = 'SETR (cityscapes)'
SEGFORMER = 'SegFormer (cityscapes)'


class TestSM74Structure(TestCase):
    def test_rank1_scores_are_the_sota(self) -> None:
        entities, g = load_sm74(), Grid(101)

        rank1 = entity_tile(ranking_cube(entities, g), 1)
        scores = entity_score_tile(entities, rank1)
        sota = sota_tile(entities, g)

        np.testing.assert_array_equal(scores.values, sota.values)

    def test_coarse_grid_is_a_subgrid(self) -> None:
        entities = load_sm74()

        coarse = ranking_cube(entities, Grid(51))
        fine = ranking_cube(entities, Grid(101), 4)

        np.testing.assert_array_equal(coarse.ranks, fine.ranks[:, ::2, ::2])

    def test_shares_sum_to_one(self) -> None:
        shares = area_share(entity_tile(ranking_cube(load_sm74(), Grid(51)), 1))

        self.assertAlmostEqual(sum(shares.values()), 1.0, places=12)
        self.assertEqual(list(shares), sorted(shares))


@pytest.mark.slow
class TestSM74Published(TestCase):
    def test_rank1_at_501(self) -> None:
        shares = area_share(entity_tile(ranking_cube(load_sm74(), Grid(501)), 1))

        self.assertEqual(set(shares), set(RANK1_SHARES))

        for eid, share in RANK1_SHARES.items():
            self.assertAlmostEqual(shares[eid], share, delta=0.015, msg=eid)

    def test_full_grid(self) -> None:
        cube = ranking_cube(load_sm74(), Grid(2001))

        shares = area_share(entity_tile(cube, 1))

        self.assertEqual(set(shares), set(RANK1_SHARES))

        for eid, share in RANK1_SHARES.items():
            self.assertAlmostEqual(shares[eid], share, delta=0.01, msg=eid)

        setr = rank_tile(cube, SETR)

        self.assertEqual(setr.value_range(), (1.0, 14.0))

        selection = select_minimax(cube)

        self.assertEqual(selection.winner, SETR)
        self.assertEqual(selection.stages[0].survivors, (SETR, SEGFORMER))
        self.assertEqual(selection.stages[0].value, 14.0)

        self.assertAlmostEqual(rank_stats(cube, SETR).mean_rank, 4.0495, delta=0.05)
        self.assertAlmostEqual(rank_stats(cube, SEGFORMER).mean_rank, 6.8558, delta=0.05)
