"""
Property suites run by `verify`.
"""

from .checks import (
    SUITES,
    check_cost_matrices,
    check_cost_unbiasedness,
    check_gradients,
    check_potentials,
    check_unbiasedness,
    expected_loss_estimate,
    run_checks,
)

__all__ = [
    'SUITES', 'check_cost_matrices', 'check_cost_unbiasedness', 'check_gradients',
    'check_potentials', 'check_unbiasedness', 'expected_loss_estimate', 'run_checks',
]
