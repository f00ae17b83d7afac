#!/usr/bin/env python3
"""
PROPERTY CHECKS - exhaustive and statistical verification of the core math
==========================================================================
Suites:
1. estimators   - loss estimate expectation equals 1 - e_y (exact sums over y~)
2. costs        - cost estimate expectation equals column y of C
3. potentials   - Monte Carlo vs exact potentials, known value, exponential bound
4. gradients    - analytic f_hat' vs central finite differences
5. matrices     - logistic and BBM cost-matrix structure

Every check returns
    {
        'passed': bool,
        'issues': [str],
        'max_error': float,
        'tolerance': float,
        'margin': float,      # tolerance - max_error, >= 0 on success
        'cases': int,
    }
"""

import itertools
import logging
import time
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from src.boosting.logistic import ada_objective_estimate, logistic_cost_matrix
from src.estimation.cost_vectors import CostMatrix, estimate_cost_vector
from src.estimation.loss_estimators import LossEstimator, estimate_loss
from src.estimation.sampling import sampling_distribution
from src.potentials.bbm_costs import bbm_cost_matrix
from src.potentials.potential import PotentialEvaluator, PotentialQuery, potential_exact, potential_mc
from src.rng import make_rng

logger = logging.getLogger(__name__)

EXACT_TOL = 1e-12


def _result(issues: List[str], max_error: float, tolerance: float, cases: int, **extra) -> Dict:
    return {
        'passed': not issues,
        'issues': issues,
        'max_error': float(max_error),
        'tolerance': float(tolerance),
        'margin': float(tolerance - max_error),
        'cases': cases,
        **extra,
    }


def expected_loss_estimate(estimator: LossEstimator, y: int, y_hat: int, k: int,
                           rho: float) -> np.ndarray:
    """Exact E_{y~ ~ p}[l_hat] by summing over every y~."""
    dist = sampling_distribution(y_hat, k, rho)
    total = np.zeros(k)
    for y_tilde in range(1, k + 1):
        p = dist.prob(y_tilde)
        if p == 0.0:
            continue
        total += p * estimator(y_tilde, y_hat, y_tilde == y, dist).values
    return total


def check_unbiasedness(estimator: LossEstimator = estimate_loss,
                       ks: Iterable[int] = (2, 3, 5, 10),
                       rhos: Iterable[float] = (0.01, 0.1, 0.5),
                       tol: float = EXACT_TOL) -> Dict:
    """
    E[l_hat] = 1 - e_y for all (y, y^); also the k/rho bound, and l_hat is zero
    exactly when y~ != y^ and (y~ != y or k = 2), so P(l_hat != 0) >= 1 - rho.
    """
    issues, max_error, cases = [], 0.0, 0
    for k in ks:
        for rho in rhos:
            for y, y_hat in itertools.product(range(1, k + 1), repeat=2):
                cases += 1
                target = np.ones(k)
                target[y - 1] = 0.0
                err = float(np.abs(expected_loss_estimate(estimator, y, y_hat, k, rho) - target).max())
                max_error = max(max_error, err)
                if err > tol:
                    issues.append(f"k={k} rho={rho} y={y} y^={y_hat}: bias {err:.3e}")

                dist = sampling_distribution(y_hat, k, rho)
                p_nonzero = 0.0
                for y_tilde in range(1, k + 1):
                    lhat = estimator(y_tilde, y_hat, y_tilde == y, dist)
                    if np.any(lhat.values < 0) or np.any(lhat.values > k / rho + tol):
                        issues.append(f"k={k} rho={rho} y={y} y~={y_tilde}: outside [0, k/rho]")
                    if np.count_nonzero(lhat.values) > k - 1:
                        issues.append(f"k={k} y={y} y~={y_tilde}: more than k-1 nonzero entries")
                    expect_zero = y_tilde != y_hat and (y_tilde != y or k == 2)
                    if lhat.is_zero != expect_zero:
                        issues.append(f"k={k} y={y} y^={y_hat} y~={y_tilde}: zero estimate is {lhat.is_zero}")
                    if not lhat.is_zero:
                        p_nonzero += dist.prob(y_tilde)
                if p_nonzero < 1.0 - rho - tol:
                    issues.append(f"k={k} rho={rho} y={y} y^={y_hat}: P(nonzero) {p_nonzero:.4f} < 1 - rho")
    return _result(issues[:20], max_error, tol, cases)


def check_cost_unbiasedness(n_matrices: int = 100, max_k: int = 5,
                            rhos: Iterable[float] = (0.1, 0.5),
                            estimator: LossEstimator = estimate_loss,
                            tol: float = EXACT_TOL, seed: int = 0) -> Dict:
    """E[C (1 - l_hat)] = C e_y for random C, clipping disabled."""
    rng = make_rng(seed)
    rhos = tuple(rhos)
    issues, max_error = [], 0.0
    for trial in range(n_matrices):
        k = int(rng.integers(2, max_k + 1))
        C = CostMatrix(rng.uniform(-1.0, 1.0, size=(k, k)))
        y, y_hat = (int(v) for v in rng.integers(1, k + 1, size=2))
        rho = rhos[trial % len(rhos)]
        dist = sampling_distribution(y_hat, k, rho)
        expected = np.zeros(k)
        for y_tilde in range(1, k + 1):
            lhat = estimator(y_tilde, y_hat, y_tilde == y, dist)
            expected += dist.prob(y_tilde) * estimate_cost_vector(C, lhat, None).values
        err = float(np.abs(expected - C.column(y)).max())
        max_error = max(max_error, err)
        if err > tol:
            issues.append(f"trial {trial} k={k} y={y}: cost bias {err:.3e}")
    return _result(issues[:20], max_error, tol, n_matrices)


def check_potentials(n_queries: int = 50, samples: int = 1_000_000, max_k: int = 3,
                     max_remaining: int = 6, z: float = 4.0, seed: int = 0) -> Dict:
    """
    Monte Carlo within z standard errors of the exact value on random queries,
    phi^1_2(0) = 0.16 at k=2, gamma=0.2, and phi^1_N(0) <= (k-1) exp(-gamma^2 N / 2).
    """
    rng = make_rng(seed)
    issues, worst_z, cases = [], 0.0, 0
    for i in range(n_queries):
        k = int(rng.integers(2, max_k + 1))
        remaining = int(rng.integers(0, max_remaining + 1))
        gamma = float(rng.choice([0.0, 0.1, 0.2, 0.3, 0.5]))
        y = int(rng.integers(1, k + 1))
        s = rng.integers(0, 3, size=k).astype(float)
        q = PotentialQuery(y=y, remaining=remaining, s=s, gamma=gamma, k=k)
        exact = potential_exact(q)
        estimate, stderr = potential_mc(q, samples, rng)
        cases += 1
        if stderr == 0.0:
            if estimate != exact:
                issues.append(f"query {i}: degenerate MC {estimate} != exact {exact}")
            continue
        score = abs(estimate - exact) / stderr
        worst_z = max(worst_z, score)
        if score > z:
            issues.append(f"query {i} (k={k}, i={remaining}, y={y}, s={s}): "
                          f"|mc - exact| = {score:.2f} standard errors")

    known = potential_exact(PotentialQuery(y=1, remaining=2, s=np.zeros(2), gamma=0.2, k=2))
    cases += 1
    if abs(known - 0.16) > EXACT_TOL:
        issues.append(f"phi^1_2(0) at k=2, gamma=0.2 is {known}, expected 0.16")

    bound_slack = np.inf
    for k in range(2, 5):
        for n in range(0, 13):
            for gamma in (0.1, 0.3, 0.5):
                cases += 1
                value = potential_exact(PotentialQuery(y=1, remaining=n, s=np.zeros(k), gamma=gamma, k=k))
                bound = (k - 1) * np.exp(-gamma ** 2 * n / 2.0)
                bound_slack = min(bound_slack, bound - value)
                if value > bound + EXACT_TOL:
                    issues.append(f"phi^1_{n}(0) = {value:.4f} exceeds bound {bound:.4f} (k={k}, gamma={gamma})")

    return _result(issues[:20], worst_z, z, cases, bound_slack=float(bound_slack))


def check_gradients(n_trials: int = 1000, max_k: int = 5, step: float = 1e-5,
                    rtol: float = 1e-6, seed: int = 0) -> Dict:
    """
    Analytic f_hat' against central differences. The error is measured
    relative to max(1, |f'|) so derivatives near zero are compared absolutely.
    """
    rng = make_rng(seed)
    issues, max_error = [], 0.0
    for trial in range(n_trials):
        k = int(rng.integers(2, max_k + 1))
        alpha = float(rng.uniform(-2.0, 2.0))
        s = rng.normal(0.0, 1.5, size=k)
        h = int(rng.integers(1, k + 1))
        lhat = rng.uniform(0.0, 3.0, size=k) * (rng.random(k) < 0.6)
        _, analytic = ada_objective_estimate(alpha, s, h, lhat)
        up, _ = ada_objective_estimate(alpha + step, s, h, lhat)
        down, _ = ada_objective_estimate(alpha - step, s, h, lhat)
        numeric = (up - down) / (2.0 * step)
        err = abs(analytic - numeric) / max(1.0, abs(analytic), abs(numeric))
        max_error = max(max_error, err)
        if err > rtol:
            issues.append(f"trial {trial}: analytic {analytic:.8f} vs numeric {numeric:.8f}")
    return _result(issues[:20], max_error, rtol, n_trials)


def check_cost_matrices(n_logistic: int = 10_000, max_k_logistic: int = 6,
                        lattice_max: int = 3, max_k_bbm: int = 3, max_remaining: int = 4,
                        gamma: float = 0.1, col_tol: float = 1e-9, seed: int = 0) -> Dict:
    """Logistic: zero column sums and diagonal minima. BBM: diagonal minima on a lattice."""
    rng = make_rng(seed)
    issues, max_error, cases = [], 0.0, 0
    for trial in range(n_logistic):
        k = int(rng.integers(2, max_k_logistic + 1))
        s = rng.normal(0.0, 3.0, size=k)
        C = logistic_cost_matrix(s, k)
        cases += 1
        col_err = float(np.abs(C.entries.sum(axis=0)).max())
        max_error = max(max_error, col_err)
        if col_err >= col_tol:
            issues.append(f"logistic trial {trial}: column sum {col_err:.3e}")
        if not C.column_minima_on_diagonal():
            issues.append(f"logistic trial {trial}: column minimum off the diagonal")

    for k in range(2, max_k_bbm + 1):
        evaluator = PotentialEvaluator(gamma, k)
        for remaining in range(0, max_remaining + 1):
            n_learners = remaining + 1
            for votes in itertools.product(range(lattice_max + 1), repeat=k):
                cases += 1
                C = bbm_cost_matrix(np.array(votes, dtype=float), 1, n_learners, gamma, k, evaluator)
                if not C.column_minima_on_diagonal():
                    issues.append(f"BBM k={k} remaining={remaining} s={votes}: column minimum off the diagonal")

    return _result(issues[:20], max_error, col_tol, cases)


SUITES: Dict[str, Callable[[], Dict]] = {
    'estimators': check_unbiasedness,
    'costs': check_cost_unbiasedness,
    'potentials': check_potentials,
    'gradients': check_gradients,
    'matrices': check_cost_matrices,
}


def run_checks(names: Optional[Iterable[str]] = None, journal=None) -> Dict[str, Dict]:
    """Run the named suites (all by default) and return their results by name."""
    names = list(names) if names else list(SUITES)
    results = {}
    for name in names:
        started = time.perf_counter()
        result = SUITES[name]()
        result['elapsed_s'] = time.perf_counter() - started
        results[name] = result
        logger.info("check %s: %s (margin %.3e, %d cases, %.2fs)", name,
                    "passed" if result['passed'] else "FAILED", result['margin'],
                    result['cases'], result['elapsed_s'])
        if journal:
            journal.log_check_result(name, result['passed'], result['margin'])
    return results
