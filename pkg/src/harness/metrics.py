"""
Stream metrics: total and asymptotic accuracy, moving-window learning
curves, and empirical weak-learner edges.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.constants import ASYMPTOTIC_FRACTION, MIN_CURVE_ROUNDS, WINDOW_FRACTION
from src.exceptions import InvalidParameterError


def total_accuracy(correct: Sequence[bool]) -> float:
    correct = np.asarray(correct, dtype=float)
    return float(correct.mean()) if len(correct) else float("nan")


def asymptotic_accuracy(correct: Sequence[bool], fraction: float = ASYMPTOTIC_FRACTION) -> float:
    """Accuracy over the final `fraction` of rounds; earlier rounds still trained."""
    correct = np.asarray(correct, dtype=float)
    n = len(correct)
    if n == 0:
        return float("nan")
    tail = max(1, math.ceil(fraction * n))
    return float(correct[n - tail:].mean())


def window_length(total_rounds: int, fraction: float = WINDOW_FRACTION) -> int:
    return max(1, math.ceil(fraction * total_rounds))


def learning_curve(correct: Sequence[bool],
                   fraction: float = WINDOW_FRACTION) -> Tuple[np.ndarray, np.ndarray]:
    """
    (round, window accuracy) for rounds W..T (1-based), W = ceil(fraction T).

    The value at round r averages rounds r-W+1..r; earlier rounds have no
    full window and are omitted.
    """
    correct = np.asarray(correct, dtype=float)
    T = len(correct)
    if T < MIN_CURVE_ROUNDS:
        raise InvalidParameterError(f"learning curve needs at least {MIN_CURVE_ROUNDS} rounds, got {T}")
    W = window_length(T, fraction)
    csum = np.concatenate(([0.0], np.cumsum(correct)))
    rounds = np.arange(W, T + 1)
    return rounds, (csum[rounds] - csum[rounds - W]) / W


class EdgeTracker:
    """
    Running sums for gamma_i = sum_t c^i_t[h^i_t] / sum_t c^i_t[y_t], where
    c^i_t is column y_t of the round's cost matrix for learner i.
    """

    def __init__(self, n_learners: int):
        self.numerator = np.zeros(n_learners)
        self.denominator = np.zeros(n_learners)

    def update(self, wl_predictions: Sequence[int], cost_matrices, true_label: int):
        for i, (h, C) in enumerate(zip(wl_predictions, cost_matrices)):
            column = C.column(true_label)
            self.numerator[i] += column[int(h) - 1]
            self.denominator[i] += column[true_label - 1]

    def edges(self) -> List[Optional[float]]:
        return [None if den == 0 else float(num / den)
                for num, den in zip(self.numerator, self.denominator)]


def empirical_edges(cost_vectors: Sequence[Sequence[np.ndarray]],
                    predictions: Sequence[Sequence[int]],
                    labels: Sequence[int]) -> List[Optional[float]]:
    """
    Edges from a recorded trace: cost_vectors[t][i] is the true cost vector
    of learner i on round t, predictions[t][i] its prediction. A learner whose
    denominator is zero gets None.
    """
    if not len(labels):
        return []
    n = len(cost_vectors[0])
    num, den = np.zeros(n), np.zeros(n)
    for costs, preds, y in zip(cost_vectors, predictions, labels):
        for i in range(n):
            c = np.asarray(costs[i], dtype=float)
            num[i] += c[int(preds[i]) - 1]
            den[i] += c[int(y) - 1]
    return [None if d == 0 else float(a / d) for a, d in zip(num, den)]
