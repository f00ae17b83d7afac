"""
Weighted Gaussian naive Bayes weak learner.

Per-class feature summaries are river Gaussians updated with the importance
weight; the class prior is the weighted class total.
"""

from typing import Dict, List

import numpy as np
from river import proba

from src.constants import VAR_SMOOTHING
from src.learners.base import WeakLearner, WeakLearnerUpdate


class NaiveBayesLearner(WeakLearner):
    """Class prior and per-class Gaussian features, both weighted by importance."""

    def __init__(self, k: int):
        super().__init__(k)
        self.class_weight = np.zeros(k)
        self.gaussians: Dict[int, List[proba.Gaussian]] = {}

    def _log_likelihood(self, features: np.ndarray, label: int) -> float:
        summaries = self.gaussians[label]
        mu = np.array([g.mu for g in summaries])
        var = np.array([g.sigma ** 2 for g in summaries])
        var = var + VAR_SMOOTHING * max(1.0, float(var.max(initial=0.0)))
        return float(-0.5 * (np.log(2.0 * np.pi * var) + (features - mu) ** 2 / var).sum())

    def predict(self, features: np.ndarray) -> int:
        total = self.class_weight.sum()
        if total <= 0:
            return 1
        x = np.asarray(features, dtype=float)
        scores = np.full(self.k, -np.inf)
        for label in self.gaussians:
            scores[label - 1] = np.log(self.class_weight[label - 1] / total) + self._log_likelihood(x, label)
        return int(np.argmax(scores)) + 1

    def update(self, update: WeakLearnerUpdate) -> "NaiveBayesLearner":
        w = update.importance_weight
        if w <= 0:
            return self
        x = np.asarray(update.features, dtype=float)
        label = int(update.target_label)
        summaries = self.gaussians.setdefault(label, [proba.Gaussian() for _ in range(len(x))])
        for g, value in zip(summaries, x):
            g.update(float(value), w)
        self.class_weight[label - 1] += w
        return self
