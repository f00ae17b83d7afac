"""
Experiment harness: data, streams, metrics and seeded runs.
"""

from .datasets import Dataset, DatasetSpec, load_csv
from .experiment import ExperimentReport, RunSpec, StreamReport, run_experiment, run_stream
from .journal import ExperimentJournal
from .metrics import (
    EdgeTracker,
    asymptotic_accuracy,
    empirical_edges,
    learning_curve,
    total_accuracy,
)
from .reporting import ReportValidator, load_report, write_curve_csv, write_json
from .streams import build_stream
from .synthetic import SyntheticSpec, bayes_error, bayes_predict, synth_generate

__all__ = [
    'Dataset', 'DatasetSpec', 'load_csv',
    'ExperimentReport', 'RunSpec', 'StreamReport', 'run_experiment', 'run_stream',
    'ExperimentJournal',
    'EdgeTracker', 'asymptotic_accuracy', 'empirical_edges', 'learning_curve', 'total_accuracy',
    'ReportValidator', 'load_report', 'write_curve_csv', 'write_json',
    'build_stream',
    'SyntheticSpec', 'bayes_error', 'bayes_predict', 'synth_generate',
]
