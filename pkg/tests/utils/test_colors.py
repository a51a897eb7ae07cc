from unittest import TestCase

import numpy as np
from stgpytools import CustomKeyError, CustomValueError

from tilekit import CATEGORICAL_PALETTE, TileKind, categorical_colors, default_colormap, get_colormap


class TestColormaps(TestCase):
    def test_embedded(self) -> None:
        for name in ('sequential', 'diverging', 'ranks'):
            cmap = get_colormap(name, 64)

            self.assertEqual(cmap.N, 64)
            self.assertEqual(cmap.name, f'tilekit-{name}')

    def test_endpoints(self) -> None:
        cmap = get_colormap('sequential')

        np.testing.assert_allclose(cmap(0.0)[:3], (68 / 255, 1 / 255, 84 / 255))
        np.testing.assert_allclose(cmap(1.0)[:3], (253 / 255, 231 / 255, 37 / 255))

    def test_unknown(self) -> None:
        with self.assertRaises(CustomKeyError):
            get_colormap('jet')

    def test_defaults(self) -> None:
        self.assertEqual(default_colormap(TileKind.CORRELATION), 'diverging')
        self.assertEqual(default_colormap(TileKind.SKILL), 'diverging')
        self.assertEqual(default_colormap(TileKind.RANKING), 'ranks')
        self.assertEqual(default_colormap(TileKind.VALUE), 'sequential')


class TestCategoricalColors(TestCase):
    def test_distinct(self) -> None:
        cmap = categorical_colors(len(CATEGORICAL_PALETTE))

        self.assertEqual(cmap.N, 32)
        self.assertEqual(len({tuple(c) for c in cmap.colors}), 32)  # type: ignore[union-attr]

    def test_past_the_palette(self) -> None:
        colors = [tuple(c) for c in categorical_colors(100).colors]  # type: ignore[union-attr]

        self.assertEqual(len(set(colors)), 100)
        self.assertEqual(colors[:32], [(r / 255, g / 255, b / 255) for r, g, b in CATEGORICAL_PALETTE])
        self.assertTrue(all(0.0 <= v <= 1.0 for c in colors for v in c))

    def test_range(self) -> None:
        with self.assertRaises(CustomValueError):
            categorical_colors(0)
