"""
Unbiased estimates of the zero-one loss vector 1 - e_y from bandit feedback.

Only the indicator 1(y~ = y) is needed. Two estimators are provided:

- estimate_loss: the main estimator. It is nonzero whenever the booster is
  right or the explored label coincides with the intermediate prediction, so
  weak learners get to update with probability at least 1 - rho.
- estimate_loss_simple: the plain importance-weighted estimator, which is the
  zero vector on every mistake round. Kept for ablation runs.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.estimation.sampling import SamplingDistribution
from src.exceptions import InvalidSpaceError, ZeroProbabilityError


@dataclass(frozen=True)
class LossEstimate:
    values: np.ndarray
    sampled_label: int
    intermediate_label: int
    was_correct: bool

    @property
    def is_zero(self) -> bool:
        return not np.any(self.values)

    def at(self, label: int) -> float:
        return float(self.values[label - 1])


LossEstimator = Callable[[int, int, bool, SamplingDistribution], LossEstimate]


def _inverse_propensity(dist: SamplingDistribution, label: int) -> float:
    if not 1 <= label <= dist.k:
        raise InvalidSpaceError(f"label {label} outside 1..{dist.k}")
    p = dist.prob(label)
    if p <= 0.0:
        raise ZeroProbabilityError(f"sampled label {label} has probability 0")
    return 1.0 / p


def estimate_loss(y_tilde: int, y_hat: int, correct: bool,
                  dist: SamplingDistribution) -> LossEstimate:
    """
    l_i = 1(y~=y)/p_y~ * 1(y!=i) 1(y^!=i) + 1(y~=y^)/p_y~ * 1(y^!=y) 1(y^=i)

    Computable from bandit feedback: when y~ != y^ the second term vanishes
    and a correct round reveals y = y~; when y~ == y^ both indicators reduce
    to `correct`.
    """
    k = dist.k
    inv_p = _inverse_propensity(dist, y_tilde)
    if not 1 <= y_hat <= k:
        raise InvalidSpaceError(f"label {y_hat} outside 1..{k}")

    values = np.zeros(k)
    if correct:
        # y = y~ is known; first term only
        values[:] = inv_p
        values[y_tilde - 1] = 0.0
        values[y_hat - 1] = 0.0
    elif y_tilde == y_hat:
        # y^ is wrong; second term only
        values[y_hat - 1] = inv_p

    values.setflags(write=False)
    return LossEstimate(values=values, sampled_label=int(y_tilde),
                        intermediate_label=int(y_hat), was_correct=bool(correct))


def estimate_loss_simple(y_tilde: int, correct: bool, dist: SamplingDistribution,
                         y_hat: int = None) -> LossEstimate:
    """l = 1(y~=y)/p_y~ * (1 - e_y~)."""
    inv_p = _inverse_propensity(dist, y_tilde)
    values = np.zeros(dist.k)
    if correct:
        values[:] = inv_p
        values[y_tilde - 1] = 0.0
    values.setflags(write=False)
    return LossEstimate(values=values, sampled_label=int(y_tilde),
                        intermediate_label=int(dist.mode_label if y_hat is None else y_hat),
                        was_correct=bool(correct))


def simple_estimator(y_tilde: int, y_hat: int, correct: bool,
                     dist: SamplingDistribution) -> LossEstimate:
    """estimate_loss_simple behind the common estimator signature."""
    return estimate_loss_simple(y_tilde, correct, dist, y_hat=y_hat)


def exact_zero_one_loss(true_label: int, k: int, y_tilde: int = None,
                        y_hat: int = None) -> LossEstimate:
    """The full-information loss vector 1 - e_y."""
    if not 1 <= true_label <= k:
        raise InvalidSpaceError(f"label {true_label} outside 1..{k}")
    values = np.ones(k)
    values[true_label - 1] = 0.0
    values.setflags(write=False)
    y_tilde = true_label if y_tilde is None else y_tilde
    return LossEstimate(values=values, sampled_label=int(y_tilde),
                        intermediate_label=int(y_tilde if y_hat is None else y_hat),
                        was_correct=bool(y_tilde == true_label))


ESTIMATORS = {
    "unbiased": estimate_loss,
    "simple": simple_estimator,
}
