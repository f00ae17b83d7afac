#!/usr/bin/env python3
"""
Test Suite for the online boosters
Tests:
- Expert votes and predictions
- Hedge expert selection and updates
- Logistic cost matrices, objective and OGD step
- Exploration-rate schedules
- Booster configuration
- Full rounds: zero-estimate no-op, aborted rounds, weight invariants
- Full-information degeneration against a hand-driven reference loop
"""

import math

import numpy as np
import pytest

from src.boosting import (
    BanditFeedback,
    BoosterConfig,
    FullInformationFeedback,
    OnlineBooster,
    ada_objective_estimate,
    argmax_label,
    booster_round,
    choose_expert_bbm,
    choose_expert_hedge,
    expert_votes,
    hedge_update,
    logistic_cost_matrix,
    logistic_loss,
    ogd_alpha_update,
    resolve_rho,
)
from src.boosting.hedge import weights_from_log
from src.boosting.logistic import bandit_learning_rate, full_information_learning_rate
from src.boosting.schedules import RHO_CEILING
from src.boosting.votes import previous_votes
from src.estimation import (
    Example,
    estimate_cost_vector,
    estimate_loss,
    exact_zero_one_loss,
    sample_final_prediction,
    sampling_distribution,
)
from src.exceptions import (
    ConfigError,
    FeedbackError,
    InvalidArgumentError,
    InvalidParameterError,
    InvalidStateError,
)
from src.harness.synthetic import SyntheticSpec, synth_generate
from src.learners import NaiveBayesLearner, OracleWeakLearner, reduce_cost_vector
from src.potentials import PotentialEvaluator, bbm_cost_matrix
from src.rng import make_rng, split_rng


class NeverCorrect:
    """Channel that reports every final prediction as a mistake."""

    def is_correct(self, y_tilde):
        return False


class BrokenChannel:
    def is_correct(self, y_tilde):
        raise RuntimeError("adversary went away")


def _mixture(k=3, T=400, seed=0):
    return synth_generate(SyntheticSpec("gaussian-mixture", k=k, T=T, n_features=2, spread=3.0, seed=seed))


# ============================================================================
# VOTES AND EXPERTS
# ============================================================================

def test_expert_votes():
    """Test 1: Prefix sums of weighted votes"""
    votes = expert_votes([1, 1], [2, 2], 3)
    assert np.array_equal(votes, [[0, 1, 0], [0, 2, 0]]), f"❌ votes {votes}"

    flipped = expert_votes([1, -2], [1, 1], 2)
    assert np.array_equal(flipped[-1], [-1, 0]) and argmax_label(flipped)[-1] == 2, "❌ negative weight flips"

    halves = expert_votes([0.5, 0.5, 0.5], [1, 2, 1], 2)
    assert np.allclose(halves[-1], [1.0, 0.5]), "❌ s^3 = (1.0, 0.5)"

    assert np.array_equal(argmax_label(np.zeros((2, 3))), [1, 1]), "❌ ties go to the lowest label"
    assert np.array_equal(previous_votes(votes, 1), [0, 0, 0]) and np.array_equal(previous_votes(votes, 2), [0, 1, 0])

    with pytest.raises(InvalidArgumentError):
        expert_votes([1, 1, 1], [1, 2], 3)
    print("✅ Expert votes")


def test_choose_expert_bbm():
    """Test 2: BBM always uses the full vote"""
    assert choose_expert_bbm(1) == 1 and choose_expert_bbm(20) == 20


def test_choose_expert_hedge_frequencies():
    """Test 3: Hedge draws are proportional to weights"""
    n = 100_000
    rng = make_rng(0)
    uniform = np.bincount([choose_expert_hedge([1, 1, 1], rng) for _ in range(n)], minlength=4)[1:] / n
    assert np.all(np.abs(uniform - 1 / 3) < 0.01), f"❌ uniform weights gave {uniform}"

    skewed = np.bincount([choose_expert_hedge([2, 1], rng) for _ in range(n)], minlength=3)[1:] / n
    assert np.all(np.abs(skewed - [2 / 3, 1 / 3]) < 0.01), f"❌ (2, 1) gave {skewed}"

    tiny = [choose_expert_hedge([1, 1e-300, 1e-300], rng) for _ in range(10_000)]
    assert np.mean(np.array(tiny) == 1) >= 0.999, "❌ mass concentrates on expert 1"
    print("✅ Hedge frequencies")


def test_choose_expert_hedge_proportionality_and_errors():
    """Test 4: Scaling all weights leaves the draw unchanged"""
    weights = np.array([0.5, 0.125, 0.25, 1.0])
    a = [choose_expert_hedge(weights, make_rng(s)) for s in range(500)]
    b = [choose_expert_hedge(weights * 8.0, make_rng(s)) for s in range(500)]
    assert a == b, "❌ scaled weights changed the draws"

    with pytest.raises(InvalidStateError):
        choose_expert_hedge([0.0, 0.0], make_rng(0))
    with pytest.raises(InvalidStateError):
        choose_expert_hedge([1.0, -1.0], make_rng(0))


def test_hedge_update():
    """Test 5: Multiplicative Hedge update"""
    zero = exact_zero_one_loss(1, 3)
    zero_lhat = estimate_loss(2, 1, False, sampling_distribution(1, 3, 0.1))
    log_w = np.log([0.5, 1.0, 0.25])
    unchanged = hedge_update(log_w, zero_lhat, [1, 2, 3])
    assert np.allclose(weights_from_log(unchanged), [0.5, 1.0, 0.25]), "❌ zero estimate must not move weights"

    lhat = estimate_loss(1, 1, False, sampling_distribution(1, 3, 0.1))  # (10/9, 0, 0)
    updated = weights_from_log(hedge_update(np.zeros(2), lhat, [1, 2]))
    assert np.allclose(updated, [math.exp(-10 / 9), 1.0]), f"❌ got {updated}"

    same = weights_from_log(hedge_update(log_w, zero, [2, 2, 2]))
    assert np.allclose(same / same.sum(), np.array([0.5, 1.0, 0.25]) / 1.75), "❌ proportions changed"

    huge = hedge_update(np.zeros(2), exact_zero_one_loss(2, 2), [1, 2])
    for _ in range(2000):
        huge = hedge_update(huge, exact_zero_one_loss(2, 2), [1, 2])
    assert huge.max() == 0.0 and np.all(np.isfinite(huge)), "❌ log weights must stay finite with max 0"
    print("✅ Hedge update")


# ============================================================================
# LOGISTIC MACHINERY
# ============================================================================

def test_logistic_cost_matrix_examples():
    """Test 6: Logistic cost matrix worked examples"""
    C = logistic_cost_matrix(np.zeros(3), 3).entries
    off = C[~np.eye(3, dtype=bool)]
    assert np.allclose(off, 0.5) and np.allclose(np.diag(C), -1.0), "❌ origin matrix"

    sat = logistic_cost_matrix(np.array([50.0, 0.0]), 2).entries
    assert sat[0, 1] > 1 - 1e-12 and sat[1, 0] < 1e-12, "❌ saturation"

    one = logistic_cost_matrix(np.array([1.0, 0.0]), 2).entries
    assert abs(one[1, 0] - 0.26894) < 1e-5 and abs(one[0, 1] - 0.73106) < 1e-5, "❌ s = (1, 0)"

    with pytest.raises(InvalidParameterError):
        logistic_cost_matrix(np.array([np.inf, 0.0]), 2)
    with pytest.raises(InvalidParameterError):
        logistic_cost_matrix(np.zeros(3), 2)
    print("✅ Logistic cost matrix")


def test_logistic_cost_matrix_properties():
    """Test 7: Zero column sums, diagonal column minima"""
    rng = make_rng(2)
    for _ in range(2000):
        k = int(rng.integers(2, 7))
        C = logistic_cost_matrix(rng.normal(0, 3, size=k), k)
        assert np.abs(C.entries.sum(axis=0)).max() < 1e-9, "❌ column sum"
        assert C.column_minima_on_diagonal(), "❌ column minimum off the diagonal"


def test_logistic_loss_and_objective():
    """Test 8: Logistic loss and the estimated objective"""
    assert abs(logistic_loss(1, np.zeros(2)) - math.log(2)) < 1e-12
    assert abs(logistic_loss(2, np.zeros(4)) - 3 * math.log(2)) < 1e-12

    value, grad = ada_objective_estimate(0.7, np.array([0.3, -1.0, 2.0]), 2, np.ones(3))
    assert value == 0.0 and grad == 0.0, "❌ all-ones estimate zeroes the objective"

    value, grad = ada_objective_estimate(0.0, np.zeros(2), 1, np.zeros(2))
    assert abs(value - 2 * math.log(2)) < 1e-12, f"❌ f(0) = {value}"
    assert abs(grad) < 1e-12

    rng = make_rng(9)
    for _ in range(200):
        k = int(rng.integers(2, 6))
        alpha, s, h = float(rng.uniform(-2, 2)), rng.normal(0, 1.5, size=k), int(rng.integers(1, k + 1))
        lhat = rng.uniform(0, 3, size=k)
        _, analytic = ada_objective_estimate(alpha, s, h, lhat)
        up, _ = ada_objective_estimate(alpha + 1e-5, s, h, lhat)
        down, _ = ada_objective_estimate(alpha - 1e-5, s, h, lhat)
        numeric = (up - down) / 2e-5
        assert abs(analytic - numeric) <= 1e-6 * max(1.0, abs(analytic)), "❌ derivative mismatch"
    print("✅ Logistic loss and objective")


def test_ogd_alpha_update():
    """Test 9: Projected OGD step"""
    assert ogd_alpha_update(0.4, 0.0, 3, 0.1, 3) == 0.4, "❌ zero gradient"
    assert ogd_alpha_update(2.0, 5.0, 1, 0.1, 2) <= 2.0
    assert ogd_alpha_update(2.0, -1e9, 1, 0.1, 2) == 2.0, "❌ projection at the upper bound"
    assert ogd_alpha_update(-2.0, 1e9, 1, 0.1, 2) == -2.0, "❌ projection at the lower bound"
    assert abs(ogd_alpha_update(0.0, 4.0, 1, 0.1, 2) - (-0.1)) < 1e-12, "❌ eta = 0.025 step"

    assert abs(bandit_learning_rate(4, 0.2, 2) - 0.2 / (4 * 2)) < 1e-15
    assert abs(full_information_learning_rate(1, 3) - math.sqrt(2)) < 1e-12
    with pytest.raises(InvalidParameterError):
        bandit_learning_rate(0, 0.1, 2)
    print("✅ OGD step")


def test_rho_schedules():
    """Test 10: Exploration-rate schedules"""
    assert resolve_rho("constant", 0.05, 3, 10, 1000) == 0.05
    expected = 3 ** 1.75 * 10 ** 0.25 / math.sqrt(30_000)
    assert abs(resolve_rho("bbm_theory", 0.1, 3, 10, 30_000) - expected) < 1e-12
    ada = resolve_rho("ada_theory", 0.1, 3, 8, 10 ** 6, sum_gamma_sq=1.0)
    assert abs(ada - 3 * 4.0 / 100.0) < 1e-9, f"❌ ada_theory gave {ada}"
    assert resolve_rho("bbm_theory", 0.1, 5, 20, 10) == RHO_CEILING, "❌ schedule must be clamped"

    with pytest.raises(ConfigError):
        resolve_rho("ada_theory", 0.1, 3, 8, 1000)
    with pytest.raises(ConfigError):
        resolve_rho("cosine", 0.1, 3, 8, 1000)
    print("✅ Schedules")


# ============================================================================
# CONFIGURATION
# ============================================================================

def test_booster_config():
    """Test 11: Config validation and presets"""
    config = BoosterConfig.preset("OptFull", n_learners=4, rho=0.3)
    assert config.algorithm == "bbm" and config.full_information and config.effective_rho == 0.0

    with pytest.raises(InvalidParameterError):
        BoosterConfig(rho=1.5)
    with pytest.raises(InvalidParameterError):
        BoosterConfig(n_learners=0)
    with pytest.raises(InvalidParameterError):
        BoosterConfig(clip_bound=-1.0)
    with pytest.raises(ConfigError):
        BoosterConfig(algorithm="adaboost")
    with pytest.raises(ConfigError):
        BoosterConfig.preset("BinBandit")
    with pytest.raises(InvalidArgumentError):
        OnlineBooster(BoosterConfig(n_learners=3), [NaiveBayesLearner(3)], 3)
    print("✅ Booster config")


# ============================================================================
# ROUNDS
# ============================================================================

def test_perfect_single_learner_full_information():
    """Test 12: N=1 BBM with a perfect oracle is always right"""
    config = BoosterConfig(algorithm="bbm", mode="full", n_learners=1)
    learner = OracleWeakLearner(3, gamma=1.0)
    booster = OnlineBooster(config, [learner], 3, seed=1)
    rng = make_rng(3)
    for y in rng.integers(1, 4, size=300):
        learner.reveal(int(y), rng)
        outcome = booster.round(Example(np.zeros(1), int(y)), FullInformationFeedback(int(y)))
        assert outcome.correct and outcome.final == y, f"❌ round {outcome.round} wrong"
    assert booster.state.round == 300 and np.all(booster.state.alphas == 1.0)
    print("✅ Perfect learner never errs")


def test_ada_zero_estimate_first_round_is_noop():
    """Test 13: A missed exploration on round 1 changes nothing"""
    config = BoosterConfig(algorithm="ada", mode="bandit", n_learners=3, rho=0.9)
    for seed in range(50):
        learners = [NaiveBayesLearner(3) for _ in range(3)]
        booster = OnlineBooster(config, learners, 3, seed=seed)
        outcome = booster.round(Example(np.array([0.2, 0.4]), 2), NeverCorrect())
        if outcome.final == outcome.intermediate:
            continue
        assert outcome.loss_estimate.is_zero, "❌ explored miss must give a zero estimate"
        assert np.array_equal(booster.state.alphas, np.zeros(3)), "❌ alphas moved"
        assert np.array_equal(booster.state.log_hedge_weights, np.zeros(3)), "❌ Hedge weights moved"
        assert all(np.allclose(c.values, 0.0) for c in outcome.cost_vectors), "❌ C 1 must vanish at s = 0"
        assert all(wl.class_weight.sum() == 0.0 for wl in learners), "❌ weak learners updated"
        assert booster.zero_estimate_rounds == 1 and booster.state.round == 1
        print(f"✅ Zero-estimate round is a no-op (seed {seed})")
        return
    pytest.fail("❌ no seed produced an explored final prediction")


def test_failed_feedback_aborts_round():
    """Test 14: Channel failure leaves the booster untouched"""
    data = _mixture(T=50)
    config = BoosterConfig(algorithm="ada", n_learners=3, rho=0.2)
    learners = [NaiveBayesLearner(3) for _ in range(3)]
    booster = OnlineBooster(config, learners, 3, seed=0)
    for row in range(20):
        ex = data.example(row)
        booster.round(ex, BanditFeedback(ex.true_label))

    before = booster.state
    class_weights = [wl.class_weight.copy() for wl in learners]
    with pytest.raises(FeedbackError):
        booster.round(data.example(20), BrokenChannel())
    assert booster.state is before, "❌ state replaced on an aborted round"
    assert all(np.array_equal(w, wl.class_weight) for w, wl in zip(class_weights, learners)), "❌ learners updated"

    full = OnlineBooster(BoosterConfig(mode="full", n_learners=3), [NaiveBayesLearner(3) for _ in range(3)], 3)
    with pytest.raises(FeedbackError):
        full.round(data.example(0), BanditFeedback(data.labels[0]))
    assert full.state.round == 0
    print("✅ Aborted rounds leave no trace")


def test_bandit_channel_hides_label():
    """Test 15: A bandit channel has no label accessor"""
    channel = BanditFeedback(3)
    assert channel.is_correct(3) and channel.is_mistake(1)
    assert not hasattr(channel, "reveal_label")
    with pytest.raises(AttributeError):
        channel.label = 3
    assert FullInformationFeedback(2).reveal_label() == 2


def test_weight_invariants_over_a_run():
    """Test 16: BBM alphas stay 1, Ada alphas stay in [-2, 2]"""
    data = _mixture(T=300, seed=4)
    for algorithm in ("bbm", "ada"):
        config = BoosterConfig(algorithm=algorithm, n_learners=4, rho=0.2, gamma=0.1)
        booster = OnlineBooster(config, [NaiveBayesLearner(3) for _ in range(4)], 3, seed=2)
        for row in range(len(data)):
            ex = data.example(row)
            outcome, state = booster_round(booster, ex, BanditFeedback(ex.true_label))
            if algorithm == "bbm":
                assert np.all(state.alphas == 1.0), "❌ BBM alphas moved"
                assert outcome.chosen_expert == 4
            else:
                assert np.all(np.abs(state.alphas) <= 2.0), "❌ Ada alpha left [-2, 2]"
                assert state.log_hedge_weights.max() == 0.0
            assert outcome.intermediate == outcome.expert_predictions[outcome.chosen_expert - 1]
        assert booster.state.round == len(data)
    print("✅ Weight invariants hold")


# ============================================================================
# FULL-INFORMATION DEGENERATION
# ============================================================================

def _reference_trace(algorithm, data, n_learners, seed, gamma=0.1, clip=100.0):
    """Full-information loop driven by hand with l_hat = 1 - e_y."""
    k = data.k
    expert_rng, explore_rng, tie_rng, mc_rng = split_rng(seed, 4)
    learners = [NaiveBayesLearner(k) for _ in range(n_learners)]
    alphas = np.ones(n_learners) if algorithm == "bbm" else np.zeros(n_learners)
    log_w = np.zeros(n_learners)
    evaluator = PotentialEvaluator(gamma, k) if algorithm == "bbm" else None
    finals, alpha_trace = [], []

    for t in range(1, len(data) + 1):
        x, y = data.features[t - 1], int(data.labels[t - 1])
        h = [wl.predict(x) for wl in learners]
        increments = np.zeros((n_learners, k))
        for i in range(n_learners):
            increments[i, h[i] - 1] = alphas[i]
        votes = np.cumsum(increments, axis=0)
        preds = np.argmax(votes, axis=1) + 1
        if algorithm == "bbm":
            chosen = n_learners
        else:
            chosen = choose_expert_hedge(np.exp(log_w - np.max(log_w)), expert_rng)
        y_hat = int(preds[chosen - 1])
        y_tilde = sample_final_prediction(sampling_distribution(y_hat, k, 0.0), explore_rng)
        loss = 1.0 - np.eye(k)[y - 1]

        s_prev = [np.zeros(k)] + list(votes[:-1])
        if algorithm == "ada":
            eta = 2.0 * math.sqrt(2.0) / ((k - 1) * math.sqrt(t))
            new_alphas = alphas.copy()
            for i in range(n_learners):
                _, grad = ada_objective_estimate(alphas[i], s_prev[i], h[i], loss)
                new_alphas[i] = max(-2.0, min(2.0, alphas[i] - eta * grad))
        else:
            new_alphas = alphas

        for i, wl in enumerate(learners):
            if algorithm == "bbm":
                C = bbm_cost_matrix(s_prev[i], i + 1, n_learners, gamma, k, evaluator, mc_rng)
            else:
                C = logistic_cost_matrix(s_prev[i], k)
            chat = estimate_cost_vector(C, loss, clip)
            update = reduce_cost_vector(chat, x, y, tie_rng)
            if update.importance_weight > 0:
                wl.update(update)

        if algorithm == "ada":
            log_w = log_w - loss[preds - 1]
            log_w = log_w - log_w.max()
        alphas = new_alphas
        finals.append(y_tilde)
        alpha_trace.append(alphas.copy())
    return finals, alpha_trace, log_w


def test_full_information_matches_reference():
    """Test 17: Full-information mode reproduces the reference loop bit for bit"""
    data = _mixture(k=3, T=1000, seed=8)
    for algorithm, n_learners in (("ada", 4), ("bbm", 5)):
        config = BoosterConfig(algorithm=algorithm, mode="full", n_learners=n_learners, rho=0.3, gamma=0.1)
        booster = OnlineBooster(config, [NaiveBayesLearner(3) for _ in range(n_learners)], 3, seed=21)
        ref_finals, ref_alphas, ref_log_w = _reference_trace(algorithm, data, n_learners, seed=21)
        for t in range(len(data)):
            ex = data.example(t)
            outcome = booster.round(ex, FullInformationFeedback(ex.true_label))
            assert outcome.final == ref_finals[t], f"❌ {algorithm} round {t + 1}: prediction differs"
            assert np.array_equal(booster.state.alphas, ref_alphas[t]), f"❌ {algorithm} round {t + 1}: alphas differ"
            assert outcome.final == outcome.intermediate, "❌ rho must be 0 in full-information mode"
        assert np.array_equal(booster.state.log_hedge_weights, ref_log_w)
        print(f"✅ {algorithm} full-information trace matches over {len(data)} rounds")
