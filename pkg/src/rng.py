"""
Random number generation.

Every stochastic operation receives an explicit numpy Generator. Generators
are built on Philox (counter-based) and split through SeedSequence.spawn, so
a run is reproducible bit-for-bit given its seed.
"""

from typing import List, Union

import numpy as np

SeedLike = Union[int, np.random.SeedSequence]


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Counter-based generator for a seed."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(int(seed))
    return np.random.Generator(np.random.Philox(seed))


def split_rng(seed: SeedLike, n: int) -> List[np.random.Generator]:
    """Independent child generators derived from one seed."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(int(seed))
    return [np.random.Generator(np.random.Philox(child)) for child in seed.spawn(n)]


def spawn(rng: np.random.Generator, n: int) -> List[np.random.Generator]:
    """Child generators of an existing generator (advances the parent)."""
    seeds = rng.integers(0, 2 ** 63 - 1, size=n, dtype=np.int64)
    return [make_rng(int(s)) for s in seeds]
