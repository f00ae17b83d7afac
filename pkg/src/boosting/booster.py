"""
Online bandit boosting template.

One round, in order:

    1.  every weak learner predicts h^i
    2.  expert votes s^j (prefix sums) and expert predictions y^j
    3.  choose expert i_t (BBM: N, Ada: Hedge draw), y^ = y^{i_t}
    4.  draw y~ from the exploration distribution around y^
    5.  feedback: 1(y~ = y) in bandit mode, y in full-information mode
    6.  loss estimate l_hat (exact 1 - e_y in full-information mode)
    7.  Ada: OGD step on every alpha^i (new alphas are used next round)
    8.  cost matrices from the cached s^{i-1}
    9.  c_hat^i = C^i (1 - l_hat), reduced to a weighted update per learner
    10. Ada: Hedge update

Nothing is mutated before feedback succeeds, so a failing channel leaves
the booster exactly as it was.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence

import numpy as np

from src.constants import (
    ADA_INITIAL_ALPHA,
    BBM_INITIAL_ALPHA,
    DEFAULT_CLIP_BOUND,
    DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_GAMMA,
    DEFAULT_MC_SAMPLES,
    DEFAULT_N_LEARNERS,
    DEFAULT_RHO,
    DEFAULT_WEIGHT_SCALE,
    TIE_BREAK_LOWEST,
)
from src.estimation.cost_vectors import CostMatrix, EstimatedCostVector, estimate_cost_vector
from src.estimation.labels import Example, LabelSpace
from src.estimation.loss_estimators import ESTIMATORS, LossEstimate, exact_zero_one_loss
from src.estimation.sampling import sample_final_prediction, sampling_distribution, validate_rho
from src.exceptions import ConfigError, InvalidArgumentError, InvalidParameterError
from src.learners.base import WeakLearner, reduce_cost_vector, wl_predict, wl_update
from src.potentials.bbm_costs import bbm_cost_matrix
from src.potentials.potential import TIE_BREAKS, PotentialEvaluator
from src.rng import SeedLike, split_rng

from .feedback import query_correct, query_label
from .hedge import choose_expert_bbm, choose_expert_hedge, hedge_update, weights_from_log
from .logistic import (
    ada_objective_estimate,
    bandit_learning_rate,
    full_information_learning_rate,
    logistic_cost_matrix,
    ogd_alpha_update,
)
from .votes import argmax_label, expert_votes, previous_votes

logger = logging.getLogger(__name__)

ALGORITHMS = ("bbm", "ada")
MODES = ("bandit", "full")

PRESETS = {
    "OptBandit": {"algorithm": "bbm", "mode": "bandit"},
    "AdaBandit": {"algorithm": "ada", "mode": "bandit"},
    "OptFull": {"algorithm": "bbm", "mode": "full"},
    "AdaFull": {"algorithm": "ada", "mode": "full"},
}


@dataclass(frozen=True)
class BoosterConfig:
    algorithm: str = "ada"
    mode: str = "bandit"
    n_learners: int = DEFAULT_N_LEARNERS
    rho: float = DEFAULT_RHO
    gamma: float = DEFAULT_GAMMA
    mc_samples: int = DEFAULT_MC_SAMPLES
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET
    clip_bound: Optional[float] = DEFAULT_CLIP_BOUND
    estimator: str = "unbiased"
    tie_break: str = TIE_BREAK_LOWEST
    weight_scale: float = DEFAULT_WEIGHT_SCALE

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.estimator not in ESTIMATORS:
            raise ConfigError(f"estimator must be one of {sorted(ESTIMATORS)}, got {self.estimator!r}")
        if self.tie_break not in TIE_BREAKS:
            raise ConfigError(f"tie_break must be one of {TIE_BREAKS}, got {self.tie_break!r}")
        if int(self.n_learners) != self.n_learners or self.n_learners < 1:
            raise InvalidParameterError(f"n_learners must be a positive integer, got {self.n_learners}")
        validate_rho(self.rho)
        if not 0.0 <= self.gamma <= 1.0:
            raise InvalidParameterError(f"gamma must lie in [0, 1], got {self.gamma}")
        if self.clip_bound is not None and self.clip_bound <= 0:
            raise InvalidParameterError(f"clip_bound must be positive, got {self.clip_bound}")
        if self.mc_samples < 1 or self.enumeration_budget < 1:
            raise InvalidParameterError("mc_samples and enumeration_budget must be >= 1")
        if self.weight_scale <= 0:
            raise InvalidParameterError(f"weight_scale must be positive, got {self.weight_scale}")

    @property
    def full_information(self) -> bool:
        return self.mode == "full"

    @property
    def effective_rho(self) -> float:
        return 0.0 if self.full_information else self.rho

    @classmethod
    def preset(cls, name: str, **overrides) -> "BoosterConfig":
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
        return cls(**{**PRESETS[name], **overrides})


@dataclass
class BoosterState:
    alphas: np.ndarray
    log_hedge_weights: np.ndarray
    round: int
    rho: float
    n_learners: int
    k: int
    mode: str
    algorithm: str

    @classmethod
    def initial(cls, config: BoosterConfig, k: int) -> "BoosterState":
        start = BBM_INITIAL_ALPHA if config.algorithm == "bbm" else ADA_INITIAL_ALPHA
        return cls(alphas=np.full(config.n_learners, start),
                   log_hedge_weights=np.zeros(config.n_learners),
                   round=0, rho=config.effective_rho, n_learners=config.n_learners,
                   k=k, mode=config.mode, algorithm=config.algorithm)

    @property
    def hedge_weights(self) -> np.ndarray:
        return weights_from_log(self.log_hedge_weights)


@dataclass(frozen=True)
class RoundOutcome:
    round: int
    wl_predictions: np.ndarray
    expert_votes: np.ndarray
    expert_predictions: np.ndarray
    chosen_expert: int
    intermediate: int
    final: int
    correct: bool
    loss_estimate: LossEstimate
    cost_matrices: List[CostMatrix] = field(repr=False)
    cost_vectors: List[EstimatedCostVector] = field(repr=False)


class OnlineBooster:
    """
    BanditBBM / AdaBandit and their full-information twins.

    Owns its weak learners and four independent random streams (expert draw,
    exploration, reduction tie-breaks, Monte Carlo potentials), all derived
    from one seed.
    """

    def __init__(self, config: BoosterConfig, learners: Sequence[WeakLearner], k: int,
                 seed: SeedLike = 0):
        self.space = LabelSpace(k)
        if len(learners) != config.n_learners:
            raise InvalidArgumentError(
                f"config asks for {config.n_learners} learners, got {len(learners)}")
        self.config = config
        self.learners = list(learners)
        self.state = BoosterState.initial(config, k)
        self.estimator = ESTIMATORS[config.estimator]
        self.expert_rng, self.explore_rng, self.tie_rng, self.mc_rng = split_rng(seed, 4)
        self.evaluator = None
        if config.algorithm == "bbm":
            self.evaluator = PotentialEvaluator(config.gamma, k, config.enumeration_budget,
                                                config.mc_samples, config.tie_break)
        self.zero_estimate_rounds = 0
        self.clipped_updates = 0

    @property
    def k(self) -> int:
        return self.space.k

    def predict(self, features: np.ndarray) -> int:
        """Intermediate prediction of the full vote; no state change."""
        h = [wl_predict(wl, features) for wl in self.learners]
        return int(argmax_label(expert_votes(self.state.alphas, h, self.k))[-1])

    def choose_expert(self) -> int:
        if self.config.algorithm == "bbm":
            return choose_expert_bbm(self.config.n_learners)
        return choose_expert_hedge(self.state.hedge_weights, self.expert_rng)

    def cost_matrix(self, votes: np.ndarray, learner_index: int) -> CostMatrix:
        s_prev = previous_votes(votes, learner_index)
        if self.config.algorithm == "bbm":
            return bbm_cost_matrix(s_prev, learner_index, self.config.n_learners,
                                   self.config.gamma, self.k, self.evaluator, self.mc_rng)
        return logistic_cost_matrix(s_prev, self.k)

    def learning_rate(self, t: int) -> float:
        if self.config.full_information:
            return full_information_learning_rate(t, self.k)
        return bandit_learning_rate(t, self.state.rho, self.k)

    def round(self, example: Example, feedback) -> RoundOutcome:
        config, state, k = self.config, self.state, self.k
        x = example.features

        h = np.array([wl_predict(wl, x) for wl in self.learners], dtype=int)
        votes = expert_votes(state.alphas, h, k)
        expert_predictions = argmax_label(votes)
        chosen = self.choose_expert()
        y_hat = int(expert_predictions[chosen - 1])

        dist = sampling_distribution(y_hat, self.space, state.rho)
        y_tilde = sample_final_prediction(dist, self.explore_rng)

        if config.full_information:
            y = query_label(feedback)
            correct = y_tilde == y
            lhat = exact_zero_one_loss(y, k, y_tilde=y_tilde, y_hat=y_hat)
            known = y
        else:
            correct = query_correct(feedback, y_tilde)
            lhat = self.estimator(y_tilde, y_hat, correct, dist)
            known = y_tilde if correct else None

        t = state.round + 1
        if config.algorithm == "ada":
            eta = self.learning_rate(t)
            new_alphas = state.alphas.copy()
            for i in range(config.n_learners):
                _, grad = ada_objective_estimate(state.alphas[i], previous_votes(votes, i + 1),
                                                 int(h[i]), lhat)
                new_alphas[i] = ogd_alpha_update(state.alphas[i], grad, t, state.rho, k, eta=eta)
        else:
            new_alphas = state.alphas

        matrices, vectors = [], []
        for i, wl in enumerate(self.learners, start=1):
            C = self.cost_matrix(votes, i)
            chat = estimate_cost_vector(C, lhat, config.clip_bound)
            update = reduce_cost_vector(chat, x, known, self.tie_rng, config.weight_scale)
            wl_update(wl, update)
            matrices.append(C)
            vectors.append(chat)
            self.clipped_updates += chat.clipped

        log_weights = state.log_hedge_weights
        if config.algorithm == "ada":
            log_weights = hedge_update(log_weights, lhat, expert_predictions)

        self.state = replace(state, alphas=new_alphas, log_hedge_weights=log_weights, round=t)
        if lhat.is_zero:
            self.zero_estimate_rounds += 1
        if t % 10_000 == 0:
            logger.debug("round %d: alphas=%s", t, np.round(new_alphas, 3))

        return RoundOutcome(round=t, wl_predictions=h, expert_votes=votes,
                            expert_predictions=expert_predictions, chosen_expert=chosen,
                            intermediate=y_hat, final=y_tilde, correct=bool(correct),
                            loss_estimate=lhat, cost_matrices=matrices, cost_vectors=vectors)


def booster_round(booster: OnlineBooster, example: Example, feedback) -> tuple:
    """Functional form: run one round and return (outcome, new state)."""
    outcome = booster.round(example, feedback)
    return outcome, booster.state
