"""
Cost matrices and unbiased cost-vector estimates.

Column r of a cost matrix is the cost vector the booster would hand a weak
learner if r were the true label. Multiplying by 1 - l_hat picks column y in
expectation, so the weak learner sees an unbiased cost vector without the
booster ever learning y.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.estimation.loss_estimators import LossEstimate
from src.exceptions import InvalidArgumentError, InvalidParameterError


@dataclass(frozen=True)
class CostMatrix:
    """entries[l-1, r-1] = cost of predicting l when the true label is r."""
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidArgumentError(f"cost matrix must be square, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    def column(self, r: int) -> np.ndarray:
        """Deterministic cost vector assuming label r is correct."""
        return self.entries[:, r - 1]

    def column_minima_on_diagonal(self, tol: float = 1e-12) -> bool:
        diag = np.diag(self.entries)
        return bool(np.all(diag <= self.entries.min(axis=0) + tol))


@dataclass(frozen=True)
class EstimatedCostVector:
    values: np.ndarray
    clipped: bool = False

    @property
    def k(self) -> int:
        return len(self.values)


def estimate_cost_vector(C: CostMatrix, lhat: LossEstimate,
                         clip_bound: Optional[float] = None) -> EstimatedCostVector:
    """c_hat = C (1 - l_hat), then optional clipping to [-clip_bound, clip_bound]."""
    entries = C.entries if isinstance(C, CostMatrix) else np.asarray(C, dtype=float)
    loss = lhat.values if isinstance(lhat, LossEstimate) else np.asarray(lhat, dtype=float)
    if entries.ndim != 2 or entries.shape[1] != loss.shape[0]:
        raise InvalidArgumentError(
            f"cost matrix {entries.shape} does not match loss estimate of length {loss.shape[0]}")

    values = entries @ (1.0 - loss)
    clipped = False
    if clip_bound is not None:
        if clip_bound <= 0:
            raise InvalidParameterError(f"clip bound must be positive, got {clip_bound}")
        bounded = np.clip(values, -clip_bound, clip_bound)
        clipped = bool(np.any(bounded != values))
        values = bounded
    return EstimatedCostVector(values=values, clipped=clipped)
