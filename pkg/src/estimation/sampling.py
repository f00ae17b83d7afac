"""
Exploration distribution over final predictions.

The booster keeps 1 - rho on its intermediate prediction and spreads rho
evenly over the other k - 1 labels, then draws the final prediction from it.
"""

from dataclasses import dataclass

import numpy as np

from src.constants import PROB_SUM_TOL
from src.estimation.labels import LabelSpace
from src.exceptions import InvalidParameterError


@dataclass(frozen=True)
class SamplingDistribution:
    probs: np.ndarray
    mode_label: int
    rho: float

    @property
    def k(self) -> int:
        return len(self.probs)

    def prob(self, label: int) -> float:
        return float(self.probs[label - 1])


def validate_rho(rho: float) -> float:
    rho = float(rho)
    if not 0.0 <= rho < 1.0:
        raise InvalidParameterError(f"exploration rate must lie in [0, 1), got {rho}")
    return rho


def sampling_distribution(y_hat: int, space: LabelSpace, rho: float) -> SamplingDistribution:
    """p_i = 1 - rho if i == y_hat else rho / (k - 1)."""
    if not isinstance(space, LabelSpace):
        space = LabelSpace(int(space))
    rho = validate_rho(rho)
    y_hat = space.check(y_hat)

    probs = np.full(space.k, rho / (space.k - 1))
    probs[y_hat - 1] = 1.0 - rho
    assert abs(probs.sum() - 1.0) <= PROB_SUM_TOL * space.k
    probs.setflags(write=False)
    return SamplingDistribution(probs=probs, mode_label=y_hat, rho=rho)


def sample_final_prediction(dist: SamplingDistribution, rng: np.random.Generator) -> int:
    """Draw the final prediction y~ from dist."""
    return int(rng.choice(dist.k, p=dist.probs)) + 1
