"""
Label domain, exploration distribution and unbiased loss / cost estimation.
"""

from .labels import LabelSpace, Example
from .sampling import (
    SamplingDistribution,
    sampling_distribution,
    sample_final_prediction,
    validate_rho,
)
from .loss_estimators import (
    LossEstimate,
    estimate_loss,
    estimate_loss_simple,
    simple_estimator,
    exact_zero_one_loss,
    ESTIMATORS,
)
from .cost_vectors import CostMatrix, EstimatedCostVector, estimate_cost_vector

__all__ = [
    'LabelSpace', 'Example',
    'SamplingDistribution', 'sampling_distribution', 'sample_final_prediction', 'validate_rho',
    'LossEstimate', 'estimate_loss', 'estimate_loss_simple', 'simple_estimator',
    'exact_zero_one_loss', 'ESTIMATORS',
    'CostMatrix', 'EstimatedCostVector', 'estimate_cost_vector',
]
