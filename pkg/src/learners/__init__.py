"""
Pluggable online weak learners and the cost-vector reduction.
"""

from typing import Any, Dict, Optional

from src.exceptions import ConfigError
from .base import WeakLearner, WeakLearnerUpdate, reduce_cost_vector, wl_predict, wl_update
from .hoeffding_tree import HoeffdingTreeLearner
from .naive_bayes import NaiveBayesLearner
from .oracle import OracleLearnerConfig, OracleWeakLearner, oracle_wl

LEARNERS = {
    'hoeffding_tree': HoeffdingTreeLearner,
    'naive_bayes': NaiveBayesLearner,
    'oracle': OracleWeakLearner,
}


def make_learner(name: str, k: int, params: Optional[Dict[str, Any]] = None) -> WeakLearner:
    """Build a weak learner from its configuration name and keyword parameters."""
    if name not in LEARNERS:
        raise ConfigError(f"unknown weak learner {name!r}; choose from {sorted(LEARNERS)}")
    try:
        return LEARNERS[name](k, **(params or {}))
    except TypeError as e:
        raise ConfigError(f"bad parameters for learner {name!r}: {e}") from e


__all__ = [
    'WeakLearner', 'WeakLearnerUpdate', 'reduce_cost_vector', 'wl_predict', 'wl_update',
    'HoeffdingTreeLearner', 'NaiveBayesLearner',
    'OracleLearnerConfig', 'OracleWeakLearner', 'oracle_wl',
    'LEARNERS', 'make_learner',
]
