"""
Weak-learner interface and the cost-vector reduction.

Weak learners here are importance-weighted online classifiers: they take a
target label and a nonnegative weight. A cost vector c is reduced to

    label  = argmin_j c_j
    weight = sum_j (c_j - c_label)

Ties in the argmin go to the true label on a correct round when it is among
the minimizers, and to a uniformly random minimizer otherwise.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.constants import DEFAULT_WEIGHT_SCALE
from src.estimation.cost_vectors import EstimatedCostVector
from src.exceptions import InvalidParameterError

TIE_TOL = 1e-12


@dataclass(frozen=True)
class WeakLearnerUpdate:
    features: np.ndarray
    target_label: int
    importance_weight: float

    def __post_init__(self):
        if not self.importance_weight >= 0.0:
            raise InvalidParameterError(
                f"importance weight must be >= 0, got {self.importance_weight}")


class WeakLearner(ABC):
    """Online multiclass predictor over labels 1..k."""

    def __init__(self, k: int):
        self.k = int(k)

    @abstractmethod
    def predict(self, features: np.ndarray) -> int:
        """Predicted label; must not change state."""

    @abstractmethod
    def update(self, update: WeakLearnerUpdate) -> "WeakLearner":
        """Absorb one weighted example in place and return self."""

    def reveal(self, true_label: int, rng: np.random.Generator) -> None:
        """Label hook used only by oracle learners in synthetic runs."""

    @property
    def needs_label(self) -> bool:
        return False


def reduce_cost_vector(chat: EstimatedCostVector, features: np.ndarray,
                       known_true_label: Optional[int], rng: np.random.Generator,
                       weight_scale: float = DEFAULT_WEIGHT_SCALE) -> WeakLearnerUpdate:
    """Turn an estimated cost vector into a (label, importance weight) update."""
    values = chat.values if isinstance(chat, EstimatedCostVector) else np.asarray(chat, dtype=float)
    low = values.min()
    tol = TIE_TOL * max(1.0, abs(low))
    minimizers = np.flatnonzero(values <= low + tol) + 1

    if len(minimizers) == 1:
        target = int(minimizers[0])
    elif known_true_label is not None and known_true_label in minimizers:
        target = int(known_true_label)
    else:
        target = int(rng.choice(minimizers))

    gaps = values - values[target - 1]
    weight = float(np.clip(gaps, 0.0, None).sum()) * weight_scale
    return WeakLearnerUpdate(features=features, target_label=target, importance_weight=weight)


def wl_predict(learner: WeakLearner, features: np.ndarray) -> int:
    return learner.predict(features)


def wl_update(learner: WeakLearner, update: WeakLearnerUpdate) -> WeakLearner:
    if update.importance_weight == 0.0:
        return learner
    return learner.update(update)
