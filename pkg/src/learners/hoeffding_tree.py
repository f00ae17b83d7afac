"""
Hoeffding tree (VFDT) weak learner backed by river.

river's HoeffdingTreeClassifier takes a per-example weight in `learn_one`,
so importance weights from the cost-vector reduction go straight through.
Split attempts happen every `grace_period` units of weight; numeric features
are summarised per class with Gaussian splitters.
"""

import logging

import numpy as np
from river import tree

from src.constants import (
    HT_GRACE_PERIOD,
    HT_LEAF_PREDICTION,
    HT_MAX_DEPTH,
    HT_N_SPLIT_POINTS,
    HT_SPLIT_CONFIDENCE,
    HT_TIE_THRESHOLD,
)
from src.exceptions import InvalidParameterError
from src.learners.base import WeakLearner, WeakLearnerUpdate

logger = logging.getLogger(__name__)


def as_river_features(features: np.ndarray) -> dict:
    return {i: float(v) for i, v in enumerate(np.asarray(features, dtype=float))}


class HoeffdingTreeLearner(WeakLearner):
    """Importance-weighted online decision tree over labels 1..k."""

    def __init__(self, k: int,
                 split_confidence: float = HT_SPLIT_CONFIDENCE,
                 grace_period: int = HT_GRACE_PERIOD,
                 tie_threshold: float = HT_TIE_THRESHOLD,
                 n_split_points: int = HT_N_SPLIT_POINTS,
                 max_depth: int = HT_MAX_DEPTH,
                 leaf_prediction: str = HT_LEAF_PREDICTION):
        super().__init__(k)
        if not 0.0 < split_confidence < 1.0:
            raise InvalidParameterError(f"split_confidence must lie in (0, 1), got {split_confidence}")
        if grace_period <= 0:
            raise InvalidParameterError(f"grace_period must be positive, got {grace_period}")
        if leaf_prediction not in ("mc", "nb", "nba"):
            raise InvalidParameterError(f"leaf_prediction must be mc, nb or nba, got {leaf_prediction!r}")
        self.model = tree.HoeffdingTreeClassifier(
            grace_period=int(grace_period),
            max_depth=max_depth,
            delta=split_confidence,
            tau=tie_threshold,
            leaf_prediction=leaf_prediction,
            splitter=tree.splitter.GaussianSplitter(n_splits=n_split_points),
        )
        self.weight_seen = 0.0

    @property
    def n_splits(self) -> int:
        return int(self.model.n_branches or 0)

    def predict(self, features: np.ndarray) -> int:
        label = self.model.predict_one(as_river_features(features))
        # untrained tree
        return 1 if label is None else int(label)

    def update(self, update: WeakLearnerUpdate) -> "HoeffdingTreeLearner":
        w = update.importance_weight
        if w <= 0:
            return self
        debug = logger.isEnabledFor(logging.DEBUG)
        before = self.n_splits if debug else 0
        self.model.learn_one(as_river_features(update.features), int(update.target_label), w=float(w))
        self.weight_seen += w
        if debug and self.n_splits > before:
            logger.debug("tree split: %d decision nodes after %.1f weight", self.n_splits, self.weight_seen)
        return self
