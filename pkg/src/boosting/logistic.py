"""
Logistic-loss machinery of the adaptive booster.

    L_y(s) = sum_{l != y} log(1 + exp(s_l - s_y))

C[l, r] = dL_r/ds_l is the cost matrix: sigmoid(s_l - s_r) off the diagonal
and minus the off-diagonal column sum on it, so every column sums to zero
and is smallest at row r. Learner weights follow projected online gradient
descent on the estimated objective

    f_hat(alpha) = sum_j L_j(s^{i-1} + alpha e_h) (1 - l_hat_j)

over the feasible set [-2, 2].
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import expit

from src.constants import ALPHA_MAX, ALPHA_MIN
from src.estimation.cost_vectors import CostMatrix
from src.estimation.loss_estimators import LossEstimate
from src.exceptions import InvalidParameterError


def logistic_loss(y: int, s: np.ndarray) -> float:
    margins = np.delete(np.asarray(s, dtype=float) - s[y - 1], y - 1)
    return float(np.logaddexp(0.0, margins).sum())


def logistic_cost_matrix(s_prev: np.ndarray, k: int) -> CostMatrix:
    s = np.asarray(s_prev, dtype=float)
    if s.shape != (k,) or not np.all(np.isfinite(s)):
        raise InvalidParameterError(f"vote vector must be {k} finite entries, got {s}")
    entries = expit(s[:, None] - s[None, :])
    np.fill_diagonal(entries, 0.0)
    np.fill_diagonal(entries, -entries.sum(axis=0))
    return CostMatrix(entries)


def ada_objective_estimate(alpha: float, s_prev: np.ndarray, h: int,
                           lhat: LossEstimate) -> Tuple[float, float]:
    """(f_hat(alpha), f_hat'(alpha)) with the derivative in closed form."""
    loss = lhat.values if isinstance(lhat, LossEstimate) else np.asarray(lhat, dtype=float)
    k = len(loss)
    s = np.asarray(s_prev, dtype=float).copy()
    s[h - 1] += alpha
    weights = 1.0 - loss

    value = sum(weights[j] * logistic_loss(j + 1, s) for j in range(k) if weights[j] != 0.0)
    # df/dalpha = sum_j (1 - l_hat_j) dL_j/ds_h = row h of the cost matrix
    row = logistic_cost_matrix(s, k).entries[h - 1]
    return float(value), float(row @ weights)


def bandit_learning_rate(t: int, rho: float, k: int) -> float:
    """eta_t = rho / (k^2 sqrt t)."""
    if t < 1:
        raise InvalidParameterError(f"round index must be >= 1, got {t}")
    return rho / (k * k * math.sqrt(t))


def full_information_learning_rate(t: int, k: int) -> float:
    """eta_t = 2 sqrt 2 / ((k - 1) sqrt t), the full-information rate."""
    if t < 1:
        raise InvalidParameterError(f"round index must be >= 1, got {t}")
    return 2.0 * math.sqrt(2.0) / ((k - 1) * math.sqrt(t))


def project_alpha(alpha: float) -> float:
    return max(ALPHA_MIN, min(ALPHA_MAX, alpha))


def ogd_alpha_update(alpha: float, grad_estimate: float, t: int, rho: float, k: int,
                     eta: Optional[float] = None) -> float:
    """alpha' = Pi(alpha - eta_t grad); eta_t defaults to the bandit rate."""
    if eta is None:
        eta = bandit_learning_rate(t, rho, k)
    return project_alpha(alpha - eta * grad_estimate)
