"""
Seeded experiment runs.

Each seed gets one full online pass over its own stream. A seed's stream
order, booster randomness and oracle-learner draws come from three children
of SeedSequence(seed), so every algorithm run with the same seed sees the
same stream. Seeds fan out over worker threads (joblib, thread backend);
each worker owns its booster and report.
"""

import logging
import os
import time
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from joblib import Parallel, delayed

from src.boosting.booster import BoosterConfig, OnlineBooster
from src.boosting.feedback import BanditFeedback, FullInformationFeedback
from src.boosting.schedules import resolve_rho
from src.constants import MIN_CURVE_ROUNDS, REPORT_SCHEMA_VERSION, THREADS_ENV_VAR
from src.exceptions import ConfigError
from src.harness.datasets import Dataset, DatasetSpec, load_csv
from src.harness.journal import ExperimentJournal
from src.harness.metrics import EdgeTracker, asymptotic_accuracy, learning_curve, total_accuracy
from src.harness.streams import build_stream
from src.harness.synthetic import SyntheticSpec, synth_generate
from src.learners import make_learner
from src.rng import make_rng

logger = logging.getLogger(__name__)

Source = Union[Dataset, DatasetSpec, SyntheticSpec]


@dataclass(frozen=True)
class RunSpec:
    booster: BoosterConfig
    learner: Optional[str] = None
    learner_params: Dict[str, Any] = field(default_factory=dict)
    duplication: Optional[int] = None
    shuffle: bool = True
    rho_schedule: str = "constant"
    sum_gamma_sq: Optional[float] = None
    save_records: bool = False


@dataclass
class StreamReport:
    """One seeded pass over one stream."""
    seed: int
    rounds: int
    intermediate: np.ndarray
    final: np.ndarray
    correct: np.ndarray
    total_accuracy: float
    asymptotic_accuracy: float
    curve_rounds: np.ndarray
    curve_values: np.ndarray
    empirical_edges: List[Optional[float]]
    zero_estimate_rounds: int
    clipped_updates: int
    rho: float
    wall_time: float = 0.0

    def records(self) -> List[Dict[str, Any]]:
        return [{"round": t + 1, "intermediate": int(a), "final": int(b), "correct": bool(c)}
                for t, (a, b, c) in enumerate(zip(self.intermediate, self.final, self.correct))]

    def to_dict(self, include_records: bool = False, include_timing: bool = True) -> Dict[str, Any]:
        out = {
            "seed": self.seed,
            "rounds": self.rounds,
            "rho": self.rho,
            "total_accuracy": self.total_accuracy,
            "asymptotic_accuracy": self.asymptotic_accuracy,
            "curve": {"rounds": self.curve_rounds.tolist(), "values": self.curve_values.tolist()},
            "empirical_edges": self.empirical_edges,
            "zero_estimate_rounds": self.zero_estimate_rounds,
            "clipped_updates": self.clipped_updates,
        }
        if include_records:
            out["records"] = self.records()
        if include_timing:
            out["wall_time_s"] = self.wall_time
        return out


def _std(values: np.ndarray) -> float:
    return float(np.std(values, ddof=1)) if len(values) > 1 else 0.0


@dataclass
class ExperimentReport:
    name: str
    config: Dict[str, Any]
    seeds: List[int]
    per_seed: List[StreamReport]

    @property
    def summary(self) -> Dict[str, Any]:
        total = np.array([r.total_accuracy for r in self.per_seed])
        asym = np.array([r.asymptotic_accuracy for r in self.per_seed])
        edges = np.array([[np.nan if e is None else e for e in r.empirical_edges]
                          for r in self.per_seed], dtype=float)
        mean_edges = [None if np.all(np.isnan(col)) else float(np.nanmean(col)) for col in edges.T]
        return {
            "total_accuracy_mean": float(total.mean()),
            "total_accuracy_std": _std(total),
            "asymptotic_accuracy_mean": float(asym.mean()),
            "asymptotic_accuracy_std": _std(asym),
            "zero_estimate_rounds_mean": float(np.mean([r.zero_estimate_rounds for r in self.per_seed])),
            "empirical_edges_mean": mean_edges,
        }

    def to_dict(self, include_records: bool = False, include_timing: bool = True) -> Dict[str, Any]:
        out = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "name": self.name,
            "config": self.config,
            "seeds": self.seeds,
            "summary": self.summary,
            "per_seed": [r.to_dict(include_records, include_timing) for r in self.per_seed],
        }
        if include_timing:
            out["wall_time_s"] = float(sum(r.wall_time for r in self.per_seed))
        return out

    def curves(self) -> List[Dict[str, Any]]:
        return [{"seed": r.seed, "rounds": r.curve_rounds, "values": r.curve_values}
                for r in self.per_seed]


def resolve_source(source: Source) -> Dataset:
    if isinstance(source, Dataset):
        return source
    if isinstance(source, DatasetSpec):
        return load_csv(source)
    if isinstance(source, SyntheticSpec):
        return synth_generate(source)
    raise ConfigError(f"cannot build a dataset from {type(source).__name__}")


def default_learner(source: Source, run: RunSpec):
    if run.learner is not None:
        return run.learner, dict(run.learner_params)
    if isinstance(source, SyntheticSpec) and source.generator == "oracle-edge":
        return "oracle", {"gamma": source.gamma, **run.learner_params}
    return "hoeffding_tree", dict(run.learner_params)


def worker_count(n_tasks: int, threads: Optional[int] = None) -> int:
    cap = threads
    if cap is None:
        env = os.getenv(THREADS_ENV_VAR)
        if env:
            try:
                cap = int(env)
            except ValueError as e:
                raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got {env!r}") from e
    if cap is None:
        cap = os.cpu_count() or 1
    if cap < 1:
        raise ConfigError(f"thread count must be >= 1, got {cap}")
    return max(1, min(n_tasks, cap))


def run_stream(dataset: Dataset, run: RunSpec, seed: int, learner: str,
               learner_params: Dict[str, Any], duplication: int) -> StreamReport:
    """One full online pass for one seed."""
    started = time.perf_counter()
    stream_seq, booster_seq, reveal_seq = np.random.SeedSequence(int(seed)).spawn(3)
    stream = build_stream(dataset, duplication, stream_seq, shuffle=run.shuffle)
    k = dataset.k

    rho = resolve_rho(run.rho_schedule, run.booster.rho, k, run.booster.n_learners,
                      len(stream), run.sum_gamma_sq)
    config = run.booster if rho == run.booster.rho else _with_rho(run.booster, rho)

    learners = [make_learner(learner, k, learner_params) for _ in range(config.n_learners)]
    revealing = [wl for wl in learners if wl.needs_label]
    reveal_rng = make_rng(reveal_seq)
    booster = OnlineBooster(config, learners, k, seed=booster_seq)
    channel = FullInformationFeedback if config.full_information else BanditFeedback
    edges = EdgeTracker(config.n_learners)

    T = len(stream)
    intermediate = np.empty(T, dtype=int)
    final = np.empty(T, dtype=int)
    correct = np.empty(T, dtype=bool)
    for t, example in enumerate(stream):
        y = example.true_label
        for wl in revealing:
            wl.reveal(y, reveal_rng)
        # the feedback channel is the booster's only route to y
        outcome = booster.round(replace(example, true_label=None), channel(y))
        intermediate[t], final[t], correct[t] = outcome.intermediate, outcome.final, outcome.correct
        edges.update(outcome.wl_predictions, outcome.cost_matrices, y)

    if T >= MIN_CURVE_ROUNDS:
        curve_rounds, curve_values = learning_curve(correct)
    else:
        logger.warning("seed %s: %d rounds is too short for a learning curve", seed, T)
        curve_rounds, curve_values = np.array([], dtype=int), np.array([])

    report = StreamReport(
        seed=int(seed), rounds=T, intermediate=intermediate, final=final, correct=correct,
        total_accuracy=total_accuracy(correct), asymptotic_accuracy=asymptotic_accuracy(correct),
        curve_rounds=curve_rounds, curve_values=curve_values, empirical_edges=edges.edges(),
        zero_estimate_rounds=booster.zero_estimate_rounds, clipped_updates=booster.clipped_updates,
        rho=rho, wall_time=time.perf_counter() - started)
    logger.info("seed %s: %d rounds, total %.4f, asymptotic %.4f (%.1fs)",
                seed, T, report.total_accuracy, report.asymptotic_accuracy, report.wall_time)
    return report


def _with_rho(config: BoosterConfig, rho: float) -> BoosterConfig:
    return BoosterConfig(**{**asdict(config), "rho": rho})


def run_experiment(source: Source, run: RunSpec, seeds: Sequence[int],
                   threads: Optional[int] = None,
                   journal: Optional[ExperimentJournal] = None,
                   name: Optional[str] = None) -> ExperimentReport:
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ConfigError("at least one seed is required")
    name = name or getattr(source, "name", "") or getattr(source, "display_name", "experiment")
    config_dict = experiment_config_dict(source, run)
    if journal:
        journal.log_run_started(name, config_dict, seeds)

    try:
        dataset = resolve_source(source)
        duplication = run.duplication or getattr(source, "duplication", 1)
        learner, params = default_learner(source, run)
        n_jobs = worker_count(len(seeds), threads)
        logger.info("%s: %d seeds on %d threads, %d rows x %d", name, len(seeds), n_jobs,
                    len(dataset), duplication)

        per_seed = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(run_stream)(dataset, run, seed, learner, params, duplication) for seed in seeds)
    except Exception as e:
        if journal:
            journal.log_run_failed(name, e)
        raise

    report = ExperimentReport(name=name, config=config_dict, seeds=seeds, per_seed=list(per_seed))
    if journal:
        for r in report.per_seed:
            journal.log_seed_finished(name, r.seed, r.rounds, r.total_accuracy, r.asymptotic_accuracy)
        journal.log_run_finished(name, report.summary)
    return report


def experiment_config_dict(source: Source, run: RunSpec) -> Dict[str, Any]:
    out = asdict(run.booster)
    learner, params = default_learner(source, run)
    out.update({
        "learner": learner,
        "learner_params": params,
        "duplication": run.duplication or getattr(source, "duplication", 1),
        "shuffle": run.shuffle,
        "rho_schedule": run.rho_schedule,
        "sum_gamma_sq": run.sum_gamma_sq,
    })
    if isinstance(source, (DatasetSpec, SyntheticSpec)):
        out["source"] = {"type": type(source).__name__, **asdict(source)}
    return out
