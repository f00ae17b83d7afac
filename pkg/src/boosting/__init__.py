"""
Online boosters under bandit or full-information feedback.
"""

from .booster import (
    ALGORITHMS,
    MODES,
    PRESETS,
    BoosterConfig,
    BoosterState,
    OnlineBooster,
    RoundOutcome,
    booster_round,
)
from .feedback import BanditFeedback, FullInformationFeedback
from .hedge import choose_expert_bbm, choose_expert_hedge, hedge_update
from .logistic import (
    ada_objective_estimate,
    logistic_cost_matrix,
    logistic_loss,
    ogd_alpha_update,
)
from .schedules import SCHEDULES, resolve_rho
from .votes import argmax_label, expert_votes

__all__ = [
    'ALGORITHMS', 'MODES', 'PRESETS',
    'BoosterConfig', 'BoosterState', 'OnlineBooster', 'RoundOutcome', 'booster_round',
    'BanditFeedback', 'FullInformationFeedback',
    'choose_expert_bbm', 'choose_expert_hedge', 'hedge_update',
    'ada_objective_estimate', 'logistic_cost_matrix', 'logistic_loss', 'ogd_alpha_update',
    'SCHEDULES', 'resolve_rho',
    'argmax_label', 'expert_votes',
]
