"""
Synthetic edge-gamma weak learner.

Predicts a label drawn from u^y_gamma, i.e. uniform with gamma extra mass on
the true label. It needs the true label, so it only exists in synthetic
harness runs; the harness calls `reveal` before the booster asks for
predictions. Updates are ignored.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.exceptions import InvalidParameterError, InvalidStateError
from src.learners.base import WeakLearner, WeakLearnerUpdate
from src.potentials.potential import smoothed_distribution


@dataclass(frozen=True)
class OracleLearnerConfig:
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise InvalidParameterError(f"oracle edge must lie in [0, 1], got {self.gamma}")


def oracle_wl(config: OracleLearnerConfig, true_label: int, k: int,
              rng: np.random.Generator) -> int:
    """One draw from u^{true_label}_gamma."""
    u = smoothed_distribution(true_label, config.gamma, k).probs
    return int(rng.choice(k, p=u)) + 1


class OracleWeakLearner(WeakLearner):

    def __init__(self, k: int, gamma: float):
        super().__init__(k)
        self.config = OracleLearnerConfig(gamma)
        self._draw: Optional[int] = None

    @property
    def needs_label(self) -> bool:
        return True

    def reveal(self, true_label: int, rng: np.random.Generator) -> None:
        self._draw = oracle_wl(self.config, true_label, self.k, rng)

    def predict(self, features: np.ndarray) -> int:
        if self._draw is None:
            raise InvalidStateError("oracle learner asked to predict before reveal()")
        return self._draw

    def update(self, update: WeakLearnerUpdate) -> "OracleWeakLearner":
        return self
