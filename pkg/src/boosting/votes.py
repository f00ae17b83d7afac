"""
Expert votes: expert j is the alpha-weighted vote of the first j weak learners.
"""

from typing import Sequence

import numpy as np

from src.exceptions import InvalidArgumentError


def expert_votes(alphas: Sequence[float], predictions: Sequence[int], k: int) -> np.ndarray:
    """Row j-1 holds s^j = sum_{i<=j} alpha_i e_{h_i}; shape (N, k)."""
    alphas = np.asarray(alphas, dtype=float)
    predictions = np.asarray(predictions, dtype=int)
    if alphas.shape != predictions.shape:
        raise InvalidArgumentError(
            f"{len(alphas)} weights for {len(predictions)} weak-learner predictions")
    increments = np.zeros((len(alphas), k))
    increments[np.arange(len(alphas)), predictions - 1] = alphas
    return np.cumsum(increments, axis=0)


def argmax_label(votes: np.ndarray) -> np.ndarray:
    """Argmax per row, lowest index on ties, as 1-based labels."""
    return np.argmax(np.atleast_2d(votes), axis=1) + 1


def previous_votes(votes: np.ndarray, learner_index: int) -> np.ndarray:
    """s^{i-1} for 1-based learner index i (the zero vector for i = 1)."""
    if learner_index == 1:
        return np.zeros(votes.shape[1])
    return votes[learner_index - 2]
