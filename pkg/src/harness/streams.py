"""
Stream construction: `duplication` independently shuffled copies of the data.
"""

from typing import Iterator, Optional

import numpy as np

from src.estimation.labels import Example
from src.exceptions import ConfigError
from src.rng import SeedLike, make_rng


def stream_order(n_rows: int, duplication: int, seed: Optional[SeedLike],
                 shuffle: bool = True) -> np.ndarray:
    """Row indices of the stream; copy j is a full permutation of 0..n-1."""
    if int(duplication) != duplication or duplication < 1:
        raise ConfigError(f"duplication must be an integer >= 1, got {duplication}")
    if not shuffle:
        return np.tile(np.arange(n_rows), duplication)
    rng = make_rng(seed)
    return np.concatenate([rng.permutation(n_rows) for _ in range(duplication)])


class Stream:
    """Ordered example stream over a dataset; iterate to get Examples."""

    def __init__(self, dataset, order: np.ndarray):
        self.dataset = dataset
        self.order = order

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[Example]:
        for row in self.order:
            yield self.dataset.example(int(row))


def build_stream(dataset, duplication: int, seed: Optional[SeedLike],
                 shuffle: bool = True) -> Stream:
    return Stream(dataset, stream_order(len(dataset), duplication, seed, shuffle))
