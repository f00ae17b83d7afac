"""
BanditBBM cost matrices: C[l, r] = phi^r_{N-i}(s^{i-1} + e_l).

Column y is the full-information OnlineMBBM cost vector for true label y.
"""

from typing import Optional

import numpy as np

from src.estimation.cost_vectors import CostMatrix
from src.exceptions import InvalidParameterError
from src.potentials.potential import PotentialEvaluator


def bbm_cost_matrix(s_prev: np.ndarray, learner_index: int, n_learners: int,
                    gamma: float, k: int, potential_evaluator: PotentialEvaluator,
                    rng: Optional[np.random.Generator] = None) -> CostMatrix:
    """Cost matrix for weak learner `learner_index` (1-based) out of `n_learners`."""
    if not 1 <= learner_index <= n_learners:
        raise InvalidParameterError(
            f"learner index must lie in 1..{n_learners}, got {learner_index}")
    if potential_evaluator.k != k or potential_evaluator.gamma != gamma:
        raise InvalidParameterError("potential evaluator built for a different (gamma, k)")

    s_prev = np.asarray(s_prev, dtype=float)
    remaining = n_learners - learner_index
    entries = np.empty((k, k))
    for l in range(k):
        s_next = s_prev.copy()
        s_next[l] += 1.0
        for r in range(k):
            entries[l, r] = potential_evaluator(r + 1, remaining, s_next, rng)
    return CostMatrix(entries)
