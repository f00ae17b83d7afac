"""
Boost-by-majority potentials.

phi^y_i(s) is the expected final zero-one loss when the true label is y, the
current votes are s, and i more votes will be drawn i.i.d. from u^y_gamma:

    phi^y_0(s)     = 1(argmax s != y)
    phi^y_{i+1}(s) = E_{l ~ u^y_gamma} phi^y_i(s + e_l)

The final vote vector only depends on how many of the i votes went to each
label, so the exact value sums the base case over the compositions of i into
k parts weighted by the multinomial pmf. This equals the full path expansion
while visiting C(i+k-1, k-1) leaves instead of k^i.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.special import gammaln, xlogy

from src.constants import (
    DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_MC_SAMPLES,
    TIE_BREAK_LOWEST,
    TIE_BREAK_UNIFORM,
)
from src.exceptions import BudgetExceededError, InvalidParameterError, InvalidSpaceError

logger = logging.getLogger(__name__)

TIE_BREAKS = (TIE_BREAK_LOWEST, TIE_BREAK_UNIFORM)


@dataclass(frozen=True)
class SmoothedDistribution:
    """u^l_gamma: uniform with gamma extra mass on the favored label."""
    probs: np.ndarray
    favored_label: int
    gamma: float


def smoothed_distribution(favored_label: int, gamma: float, k: int) -> SmoothedDistribution:
    if not 0.0 <= gamma <= 1.0:
        raise InvalidParameterError(f"edge gamma must lie in [0, 1], got {gamma}")
    if not 1 <= favored_label <= k:
        raise InvalidSpaceError(f"label {favored_label} outside 1..{k}")
    probs = np.full(k, (1.0 - gamma) / k)
    probs[favored_label - 1] += gamma
    probs.setflags(write=False)
    return SmoothedDistribution(probs=probs, favored_label=favored_label, gamma=gamma)


@dataclass(frozen=True)
class PotentialQuery:
    y: int
    remaining: int
    s: np.ndarray
    gamma: float
    k: int

    def __post_init__(self):
        if self.remaining < 0:
            raise InvalidParameterError(f"remaining must be >= 0, got {self.remaining}")
        s = np.asarray(self.s, dtype=float)
        if s.shape != (self.k,):
            raise InvalidParameterError(f"vote vector must have length {self.k}, got {s.shape}")
        object.__setattr__(self, "s", s)


def base_case(y: int, votes: np.ndarray, tie_break: str = TIE_BREAK_LOWEST) -> np.ndarray:
    """
    Zero-one loss of argmax(votes) against y, row-wise for a 2-D array.

    'lowest' resolves ties to the lowest index; 'uniform' returns the expected
    loss of a uniformly random tie break.
    """
    votes = np.atleast_2d(votes)
    if tie_break == TIE_BREAK_LOWEST:
        return (np.argmax(votes, axis=1) != y - 1).astype(float)
    if tie_break == TIE_BREAK_UNIFORM:
        is_max = votes == votes.max(axis=1, keepdims=True)
        n_max = is_max.sum(axis=1)
        return np.where(is_max[:, y - 1], 1.0 - 1.0 / n_max, 1.0)
    raise InvalidParameterError(f"unknown tie-break rule {tie_break!r}")


def leaf_count(remaining: int, k: int) -> int:
    return math.comb(remaining + k - 1, k - 1)


@lru_cache(maxsize=256)
def _compositions(n: int, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """All count vectors summing to n, with their log multinomial coefficients."""
    rows = []
    for bars in combinations(range(n + k - 1), k - 1):
        edges = (-1,) + bars + (n + k - 1,)
        rows.append([edges[j + 1] - edges[j] - 1 for j in range(k)])
    counts = np.array(rows, dtype=float).reshape(-1, k)
    log_coef = gammaln(n + 1) - gammaln(counts + 1).sum(axis=1)
    counts.setflags(write=False)
    log_coef.setflags(write=False)
    return counts, log_coef


def potential_exact(q: PotentialQuery, budget: int = DEFAULT_ENUMERATION_BUDGET,
                    tie_break: str = TIE_BREAK_LOWEST) -> float:
    """Exact phi^y_remaining(s); refuses when the leaf count exceeds budget."""
    leaves = leaf_count(q.remaining, q.k)
    if leaves > budget:
        raise BudgetExceededError(leaves, budget)

    if q.remaining == 0:
        return float(base_case(q.y, q.s, tie_break)[0])

    u = smoothed_distribution(q.y, q.gamma, q.k).probs
    counts, log_coef = _compositions(q.remaining, q.k)
    log_w = log_coef + xlogy(counts, u).sum(axis=1)
    weights = np.exp(log_w)
    losses = base_case(q.y, q.s + counts, tie_break)
    return float(np.dot(weights, losses))


def potential_mc(q: PotentialQuery, samples: int, rng: np.random.Generator,
                 tie_break: str = TIE_BREAK_LOWEST) -> Tuple[float, float]:
    """Monte Carlo phi^y_remaining(s): (mean of rollouts, standard error)."""
    if samples < 1:
        raise InvalidParameterError(f"samples must be >= 1, got {samples}")
    if q.remaining == 0:
        return float(base_case(q.y, q.s, tie_break)[0]), 0.0

    u = smoothed_distribution(q.y, q.gamma, q.k).probs
    counts = rng.multinomial(q.remaining, u, size=samples)
    losses = base_case(q.y, q.s + counts, tie_break)
    estimate = float(losses.mean())
    if samples == 1:
        return estimate, 0.0
    return estimate, float(losses.std(ddof=1) / np.sqrt(samples))


class PotentialEvaluator:
    """
    Potential oracle used by the BBM cost matrices.

    Exact when the enumeration fits the budget, Monte Carlo otherwise. Exact
    values are memoized on (y, remaining, s - min(s)) when s is a lattice
    point; the cache is confined to the owning booster (single-threaded).
    """

    def __init__(self, gamma: float, k: int,
                 budget: int = DEFAULT_ENUMERATION_BUDGET,
                 mc_samples: int = DEFAULT_MC_SAMPLES,
                 tie_break: str = TIE_BREAK_LOWEST,
                 cache: bool = True):
        if not 0.0 <= gamma <= 1.0:
            raise InvalidParameterError(f"edge gamma must lie in [0, 1], got {gamma}")
        if tie_break not in TIE_BREAKS:
            raise InvalidParameterError(f"unknown tie-break rule {tie_break!r}")
        if mc_samples < 1:
            raise InvalidParameterError(f"mc_samples must be >= 1, got {mc_samples}")
        self.gamma = float(gamma)
        self.k = int(k)
        self.budget = int(budget)
        self.mc_samples = int(mc_samples)
        self.tie_break = tie_break
        self.cache_enabled = cache
        self._cache: Dict[tuple, float] = {}
        self.hits = 0
        self.misses = 0
        self.mc_calls = 0

    def uses_exact(self, remaining: int) -> bool:
        return leaf_count(remaining, self.k) <= self.budget

    def __call__(self, y: int, remaining: int, s: np.ndarray,
                 rng: Optional[np.random.Generator] = None) -> float:
        s = np.asarray(s, dtype=float)
        q = PotentialQuery(y=y, remaining=remaining, s=s, gamma=self.gamma, k=self.k)

        if not self.uses_exact(remaining):
            if rng is None:
                raise InvalidParameterError("Monte Carlo potential needs a generator")
            self.mc_calls += 1
            estimate, _ = potential_mc(q, self.mc_samples, rng, self.tie_break)
            return estimate

        key = None
        if self.cache_enabled and np.all(s == np.round(s)):
            key = (y, remaining, tuple((s - s.min()).astype(np.int64)))
            cached = self._cache.get(key)
            if cached is not None:
                self.hits += 1
                return cached

        self.misses += 1
        value = potential_exact(q, self.budget, self.tie_break)
        if key is not None:
            self._cache[key] = value
        return value

    def cache_size(self) -> int:
        return len(self._cache)

    def clear(self):
        self._cache.clear()
