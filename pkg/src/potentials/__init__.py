"""
Boost-by-majority potential functions and the BanditBBM cost matrix.
"""

from .potential import (
    SmoothedDistribution,
    smoothed_distribution,
    PotentialQuery,
    PotentialEvaluator,
    base_case,
    leaf_count,
    potential_exact,
    potential_mc,
    TIE_BREAKS,
)
from .bbm_costs import bbm_cost_matrix

__all__ = [
    'SmoothedDistribution', 'smoothed_distribution', 'PotentialQuery', 'PotentialEvaluator',
    'base_case', 'leaf_count', 'potential_exact', 'potential_mc', 'TIE_BREAKS',
    'bbm_cost_matrix',
]
