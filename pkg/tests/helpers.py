from __future__ import annotations

from functools import cache

import numpy as np
from hypothesis import strategies as st
from stgpytools import SPath

from tilekit import EntitySet, IngestConfig, Performance, load_performances, normalize_performance

DATA_DIR = SPath(__file__).parent / 'data'

SM74_PATH = DATA_DIR / 'sm74.csv'

REPAIR_PRIOR = 0.124227

RANK1_SHARES = {
    'SETR (cityscapes)': 0.4697,
    'Mask2Former (cityscapes)': 0.2985,
    'ISANet (voc)': 0.2052,
    'DeepLabV3+ (voc)': 0.0266
}


@cache
def load_sm74(repair_prior: float | None = REPAIR_PRIOR) -> EntitySet:
    entities, _ = load_performances(IngestConfig(SM74_PATH, repair_prior=repair_prior))

    return entities


def random_performances(count: int, seed: int = 0) -> list[Performance]:
    rng = np.random.default_rng(seed)

    return [normalize_performance(*row) for row in rng.dirichlet(np.ones(4), size=count)]


def entity_set(*rows: tuple[float, float, float, float], prefix: str = 'e') -> EntitySet:
    return EntitySet.from_performances({f'{prefix}{k}': normalize_performance(*row) for k, row in enumerate(rows)})


unit_floats = st.floats(0.0, 1.0, allow_nan=False, allow_infinity=False)

counts = st.tuples(*(st.floats(0.0, 1e6, allow_nan=False, allow_infinity=False) for _ in range(4))).filter(
    lambda row: sum(row) > 1e-3
)

performances = counts.map(lambda row: normalize_performance(*row))

positive_performances = st.tuples(*(st.floats(0.01, 1.0) for _ in range(4))).map(
    lambda row: normalize_performance(*row)
)

importances = st.tuples(unit_floats, unit_floats)
