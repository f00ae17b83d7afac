"""
Expert selection.

BBM always uses the full majority vote (expert N). Ada keeps Hedge weights
v^i and draws expert i with probability proportional to v^i; after the round
v^i is multiplied by exp(-l_hat[y^i]). Weights are held in log space and
shifted so the largest is 1, which avoids underflow without changing the
proportions.
"""

from typing import Sequence

import numpy as np

from src.estimation.loss_estimators import LossEstimate
from src.exceptions import InvalidStateError


def choose_expert_bbm(n_learners: int) -> int:
    return int(n_learners)


def choose_expert_hedge(weights: Sequence[float], rng: np.random.Generator) -> int:
    """Categorical draw over experts 1..N with P(i) proportional to weights[i-1]."""
    weights = np.asarray(weights, dtype=float)
    total = weights.sum()
    if not np.all(weights >= 0) or not total > 0 or not np.isfinite(total):
        raise InvalidStateError(f"Hedge weights must be nonnegative with positive sum, got {weights}")
    return int(rng.choice(len(weights), p=weights / total)) + 1


def hedge_update(log_weights: np.ndarray, loss_estimate: LossEstimate,
                 expert_predictions: Sequence[int]) -> np.ndarray:
    """log v^i -= l_hat[y^i], renormalized so max v = 1."""
    idx = np.asarray(expert_predictions, dtype=int) - 1
    updated = np.asarray(log_weights, dtype=float) - loss_estimate.values[idx]
    return updated - updated.max()


def weights_from_log(log_weights: np.ndarray) -> np.ndarray:
    return np.exp(log_weights - np.max(log_weights))
