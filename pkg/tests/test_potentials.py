#!/usr/bin/env python3
"""
Test Suite for boost-by-majority potentials
Tests:
- Base case and worked exact values
- Monte Carlo agreement
- Symmetry, monotonicity in gamma, exponential bound
- BBM cost matrices and the evaluator cache
"""

import itertools

import numpy as np
import pytest

from src.exceptions import BudgetExceededError, InvalidParameterError
from src.potentials import (
    PotentialEvaluator,
    PotentialQuery,
    base_case,
    bbm_cost_matrix,
    potential_exact,
    potential_mc,
    smoothed_distribution,
)
from src.rng import make_rng


def _q(y, remaining, s, gamma, k):
    return PotentialQuery(y=y, remaining=remaining, s=np.asarray(s, dtype=float), gamma=gamma, k=k)


def test_smoothed_distribution():
    """Test 1: u^l_gamma"""
    u = smoothed_distribution(2, 0.4, 3)
    assert np.allclose(u.probs, [0.2, 0.6, 0.2]), f"❌ u = {u.probs}"
    with pytest.raises(InvalidParameterError):
        smoothed_distribution(1, 1.5, 3)


def test_base_case():
    """Test 2: phi^y_0 is the argmax indicator"""
    assert potential_exact(_q(1, 0, [1, 0, 0], 0.1, 3)) == 0.0, "❌ phi^1_0((1,0,0))"
    assert potential_exact(_q(2, 0, [1, 0, 0], 0.1, 3)) == 1.0, "❌ phi^2_0((1,0,0))"
    # ties: lowest index wins, or the expected loss of a uniform pick
    assert base_case(1, np.array([1.0, 1.0]))[0] == 0.0
    assert base_case(2, np.array([1.0, 1.0]))[0] == 1.0
    assert base_case(2, np.array([1.0, 1.0]), "uniform")[0] == 0.5
    print("✅ Base case")


def test_exact_worked_values():
    """Test 3: phi^1_1(0) = 0.4 and phi^1_2(0) = 0.16 at k=2, gamma=0.2"""
    one = potential_exact(_q(1, 1, [0, 0], 0.2, 2))
    two = potential_exact(_q(1, 2, [0, 0], 0.2, 2))
    assert abs(one - 0.4) < 1e-12, f"❌ phi^1_1(0) = {one}"
    assert abs(two - 0.16) < 1e-12, f"❌ phi^1_2(0) = {two}"
    print("✅ Worked potentials")


def test_exact_matches_path_expansion():
    """Test 4: Multinomial collapse equals the k^i path expansion"""
    def by_paths(y, remaining, s, gamma, k):
        u = smoothed_distribution(y, gamma, k).probs
        total = 0.0
        for path in itertools.product(range(k), repeat=remaining):
            votes = np.array(s, dtype=float)
            p = 1.0
            for l in path:
                votes[l] += 1.0
                p *= u[l]
            total += p * base_case(y, votes)[0]
        return total

    rng = make_rng(5)
    for _ in range(30):
        k = int(rng.integers(2, 4))
        remaining = int(rng.integers(0, 5))
        y = int(rng.integers(1, k + 1))
        s = rng.integers(0, 3, size=k)
        gamma = float(rng.choice([0.0, 0.2, 0.5]))
        exact = potential_exact(_q(y, remaining, s, gamma, k))
        assert abs(exact - by_paths(y, remaining, s, gamma, k)) < 1e-12, "❌ collapse differs from paths"
    print("✅ Exact potentials equal the path expansion")


def test_budget_refusal():
    """Test 5: Exact evaluation refuses oversized enumerations"""
    with pytest.raises(BudgetExceededError):
        potential_exact(_q(1, 10, [0, 0, 0], 0.1, 3), budget=10)

    # the budget counts distinct vote vectors C(remaining + k - 1, k - 1), not k^remaining paths
    value = potential_exact(_q(1, 13, [0, 0, 0], 0.3, 3))
    assert 0.0 <= value <= 1.0, "❌ 105 leaves fit the default budget although 3^13 > 10^6"
    potential_exact(_q(1, 13, [0, 0, 0], 0.3, 3), budget=105)
    with pytest.raises(BudgetExceededError):
        potential_exact(_q(1, 14, [0, 0, 0], 0.3, 3), budget=105)
    print("✅ Budget boundary at C(remaining + k - 1, k - 1)")


def test_monte_carlo():
    """Test 6: Monte Carlo estimates"""
    value, stderr = potential_mc(_q(2, 0, [1, 0], 0.3, 2), 50, make_rng(0))
    assert value == 1.0 and stderr == 0.0, "❌ remaining=0 must be exact"

    estimate, stderr = potential_mc(_q(1, 2, [0, 0], 0.2, 2), 1_000_000, make_rng(1))
    assert abs(estimate - 0.16) <= 4 * stderr, f"❌ MC {estimate} vs 0.16 (se {stderr})"

    perfect, _ = potential_mc(_q(1, 6, [0, 0, 0], 1.0, 3), 1000, make_rng(2))
    assert perfect == 0.0, "❌ gamma=1 votes all go to y"

    with pytest.raises(InvalidParameterError):
        potential_mc(_q(1, 2, [0, 0], 0.2, 2), 0, make_rng(0))
    print("✅ Monte Carlo potentials")


def test_symmetry_under_uniform_ties():
    """Test 7: phi^l_N(0) = phi^1_N(0) with uniform tie-breaking"""
    for k in (2, 3, 4):
        for n in range(0, 7):
            base = potential_exact(_q(1, n, np.zeros(k), 0.2, k), tie_break="uniform")
            for l in range(2, k + 1):
                other = potential_exact(_q(l, n, np.zeros(k), 0.2, k), tie_break="uniform")
                assert abs(other - base) < 1e-12, f"❌ asymmetric at k={k} N={n} l={l}"
    print("✅ Symmetry at the origin")


def test_monotone_in_gamma():
    """Test 8: A stronger favored label never increases the potential"""
    gammas = np.round(np.arange(0.0, 1.0, 0.1), 1)
    for k in (2, 3):
        for remaining in range(0, 7):
            for s in itertools.product(range(3), repeat=k):
                for y in range(1, k + 1):
                    values = [potential_exact(_q(y, remaining, s, g, k)) for g in gammas]
                    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:])), \
                        f"❌ not monotone: k={k} i={remaining} s={s} y={y}"
    print("✅ Monotone in gamma")


def test_exponential_bound():
    """Test 9: phi^1_N(0) <= (k-1) exp(-gamma^2 N / 2)"""
    for k in range(2, 5):
        for n in range(0, 13):
            for gamma in (0.1, 0.3, 0.5, 0.9):
                value = potential_exact(_q(1, n, np.zeros(k), gamma, k))
                assert value <= (k - 1) * np.exp(-gamma ** 2 * n / 2) + 1e-12, \
                    f"❌ bound violated at k={k} N={n} gamma={gamma}"
    print("✅ Exponential bound")


def test_bbm_cost_matrix_examples():
    """Test 10: BBM cost matrices"""
    evaluator = PotentialEvaluator(0.2, 2)
    C = bbm_cost_matrix(np.zeros(2), 1, 2, 0.2, 2, evaluator)
    # (1, 1) ties resolve to label 1, so phi^1_1(e_1) = 0
    assert np.allclose(C.column(1), [0.0, 0.4]), f"❌ column 1 = {C.column(1)}"
    assert C.column_minima_on_diagonal(), "❌ column minimum off the diagonal"

    last = bbm_cost_matrix(np.array([2.0, 0.0, 1.0]), 3, 3, 0.1, 3, PotentialEvaluator(0.1, 3))
    for l in range(3):
        s = np.array([2.0, 0.0, 1.0])
        s[l] += 1.0
        winner = int(np.argmax(s))
        for r in range(3):
            assert last.entries[l, r] == float(winner != r), "❌ last learner must use the base case"

    with pytest.raises(InvalidParameterError):
        bbm_cost_matrix(np.zeros(2), 3, 2, 0.2, 2, evaluator)
    with pytest.raises(InvalidParameterError):
        bbm_cost_matrix(np.zeros(2), 1, 2, 0.3, 2, evaluator)
    print("✅ BBM cost matrices")


def test_bbm_cost_matrix_column_minimum():
    """Test 11: Column r is smallest at row r on the vote lattice"""
    for k in (2, 3):
        evaluator = PotentialEvaluator(0.1, k)
        for remaining in range(0, 5):
            for votes in itertools.product(range(4), repeat=k):
                C = bbm_cost_matrix(np.array(votes, dtype=float), 1, remaining + 1, 0.1, k, evaluator)
                assert C.column_minima_on_diagonal(), f"❌ k={k} i={remaining} s={votes}"
    print("✅ BBM column minima on the diagonal")


def test_evaluator_cache_and_fallback():
    """Test 12: Cache hits on shifted lattice votes, MC beyond the budget"""
    evaluator = PotentialEvaluator(0.2, 3)
    a = evaluator(1, 3, np.array([1.0, 0.0, 0.0]))
    b = evaluator(1, 3, np.array([3.0, 2.0, 2.0]))
    assert a == b and evaluator.hits == 1 and evaluator.misses == 1, "❌ shifted votes must hit the cache"

    small = PotentialEvaluator(0.2, 3, budget=5, mc_samples=2000)
    assert not small.uses_exact(6), "❌ 28 leaves exceed a budget of 5"
    with pytest.raises(InvalidParameterError):
        small(1, 6, np.zeros(3))
    estimate = small(1, 6, np.zeros(3), make_rng(0))
    exact = potential_exact(_q(1, 6, np.zeros(3), 0.2, 3))
    assert abs(estimate - exact) < 0.05, f"❌ MC fallback {estimate} vs {exact}"
    assert small.mc_calls == 1
    print("✅ Evaluator cache and Monte Carlo fallback")
