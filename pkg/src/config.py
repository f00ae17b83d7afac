"""
Run configuration.

Precedence: constants.py defaults < config file (JSON or TOML) < CLI
overrides. Keys starting with `comment` are notes for humans and skipped.
Any other unknown key is a ConfigError, so typos fail loudly instead of
silently running with defaults.
"""

import copy
import json
import logging
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from src.boosting.booster import PRESETS, BoosterConfig
from src.boosting.schedules import SCHEDULES
from src.constants import (
    DEFAULT_CLIP_BOUND,
    DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_GAMMA,
    DEFAULT_MC_SAMPLES,
    DEFAULT_N_LEARNERS,
    DEFAULT_RHO,
    DEFAULT_SEEDS,
    DEFAULT_WEIGHT_SCALE,
    TIE_BREAK_LOWEST,
)
from src.exceptions import ConfigError
from src.harness.datasets import DatasetSpec
from src.harness.experiment import RunSpec
from src.harness.synthetic import SyntheticSpec

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    tomllib = None

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "dataset": {
        "path": None,
        "label_column": "label",
        "k": None,
        "duplication": 1,
        "normalize": True,
        "missing": "error",
        "name": "",
    },
    "synthetic": {
        "generator": None,
        "k": 3,
        "T": 10_000,
        "gamma": 0.3,
        "noise": 0.0,
        "n_features": 1,
        "spread": 1.0,
        "seed": 0,
    },
    "booster": {
        "preset": None,
        "algorithm": "ada",
        "mode": "bandit",
        "n_learners": DEFAULT_N_LEARNERS,
        "rho": DEFAULT_RHO,
        "rho_schedule": "constant",
        "sum_gamma_sq": None,
        "gamma": DEFAULT_GAMMA,
        "mc_samples": DEFAULT_MC_SAMPLES,
        "enumeration_budget": DEFAULT_ENUMERATION_BUDGET,
        "clip_bound": DEFAULT_CLIP_BOUND,
        "estimator": "unbiased",
        "tie_break": TIE_BREAK_LOWEST,
        "weight_scale": DEFAULT_WEIGHT_SCALE,
        "learner": None,
        "learner_params": {},
    },
    "experiment": {
        "seeds": list(DEFAULT_SEEDS),
        "threads": None,
        "shuffle": True,
        "save_records": False,
        "out": "results",
    },
    "sweep": {
        "rho": [],
        "n_learners": [],
    },
}

TOP_LEVEL_KEYS = {"name"}

BOOSTER_KEYS = ("algorithm", "mode", "n_learners", "rho", "gamma", "mc_samples",
                "enumeration_budget", "clip_bound", "estimator", "tie_break", "weight_scale")


def _is_comment(key: str) -> bool:
    return key.startswith("comment")


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        if path.suffix == ".toml":
            if tomllib is None:
                raise ConfigError("TOML configs need Python 3.11+; use JSON instead")
            with open(path, "rb") as f:
                return tomllib.load(f)
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (json.JSONDecodeError, ValueError) as e:
        raise ConfigError(f"{path}: cannot parse config ({e})") from e


def merge_config(raw: Dict[str, Any], base: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Overlay `raw` on `base` (DEFAULTS when omitted), rejecting unknown keys."""
    merged = copy.deepcopy(base if base is not None else DEFAULTS)
    merged.setdefault("name", "")
    for key, value in raw.items():
        if _is_comment(key):
            continue
        if key in TOP_LEVEL_KEYS:
            merged[key] = value
            continue
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config section {key!r}; known: {sorted(DEFAULTS)}")
        if not isinstance(value, dict):
            raise ConfigError(f"config section {key!r} must be a table/object")
        for sub, sub_value in value.items():
            if _is_comment(sub):
                continue
            if sub not in DEFAULTS[key]:
                raise ConfigError(f"unknown key {key}.{sub}; known: {sorted(DEFAULTS[key])}")
            merged[key][sub] = sub_value
    return merged


def apply_overrides(config: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Apply dotted-key overrides ('booster.rho' -> 0.01); None values are ignored."""
    out = copy.deepcopy(config)
    for dotted, value in overrides.items():
        if value is None:
            continue
        section, _, key = dotted.partition(".")
        if section not in DEFAULTS or key not in DEFAULTS[section]:
            raise ConfigError(f"unknown override {dotted!r}")
        out[section][key] = value
    return out


def load_config(path: Optional[Union[str, Path]] = None,
                overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    raw = read_config_file(path) if path else {}
    config = merge_config(raw)
    if overrides:
        config = apply_overrides(config, overrides)
    logger.debug("effective config: %s", config)
    return config


@dataclass
class ExperimentPlan:
    """Everything the CLI needs to launch runs, built from a merged config."""
    name: str
    source: Union[DatasetSpec, SyntheticSpec]
    run: RunSpec
    seeds: List[int]
    threads: Optional[int]
    out: str
    sweep: Dict[str, List[Any]] = field(default_factory=dict)


def build_booster_config(section: Dict[str, Any]) -> BoosterConfig:
    params = {key: section[key] for key in BOOSTER_KEYS}
    preset = section.get("preset")
    try:
        if preset:
            if preset not in PRESETS:
                raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
            params.update(PRESETS[preset])
        return BoosterConfig(**params)
    except TypeError as e:
        raise ConfigError(f"bad booster configuration: {e}") from e


def build_source(config: Dict[str, Any]) -> Union[DatasetSpec, SyntheticSpec]:
    dataset, synthetic = config["dataset"], config["synthetic"]
    if dataset["path"] and synthetic["generator"]:
        raise ConfigError("configure either dataset.path or synthetic.generator, not both")
    if dataset["path"]:
        return DatasetSpec(path=str(dataset["path"]), label_column=dataset["label_column"],
                           k=dataset["k"], duplication=int(dataset["duplication"]),
                           seeds=tuple(_seed_list(config["experiment"]["seeds"])),
                           normalize=bool(dataset["normalize"]), missing=dataset["missing"],
                           name=dataset["name"] or config.get("name", ""))
    if synthetic["generator"]:
        if int(dataset["duplication"]) != 1:
            raise ConfigError("dataset.duplication has no effect on synthetic streams; set synthetic.T instead")
        return SyntheticSpec(generator=synthetic["generator"], k=int(synthetic["k"]),
                             T=int(synthetic["T"]), gamma=float(synthetic["gamma"]),
                             noise=float(synthetic["noise"]), n_features=int(synthetic["n_features"]),
                             spread=float(synthetic["spread"]), seed=int(synthetic["seed"]))
    raise ConfigError("no data source: set dataset.path or synthetic.generator")


def build_plan(config: Dict[str, Any]) -> ExperimentPlan:
    """Turn a merged config into typed objects."""
    try:
        booster_section = config["booster"]
        if booster_section["rho_schedule"] not in SCHEDULES:
            raise ConfigError(f"rho_schedule must be one of {SCHEDULES}")
        booster = build_booster_config(booster_section)
        source = build_source(config)
        experiment = config["experiment"]
        run = RunSpec(booster=booster, learner=booster_section["learner"],
                      learner_params=dict(booster_section["learner_params"] or {}),
                      duplication=None, shuffle=bool(experiment["shuffle"]),
                      rho_schedule=booster_section["rho_schedule"],
                      sum_gamma_sq=booster_section["sum_gamma_sq"],
                      save_records=bool(experiment["save_records"]))
        seeds = _seed_list(experiment["seeds"])
    except (TypeError, KeyError) as e:
        raise ConfigError(f"malformed configuration: {e}") from e

    name = config.get("name") or getattr(source, "display_name", None) or source.name
    sweep = {key: list(values) for key, values in config["sweep"].items() if values}
    return ExperimentPlan(name=name, source=source, run=run, seeds=seeds,
                          threads=experiment["threads"], out=str(experiment["out"]), sweep=sweep)


def _seed_list(seeds) -> List[int]:
    if isinstance(seeds, int):
        return [seeds]
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ConfigError("experiment.seeds must not be empty")
    return seeds


def sweep_points(grid: Dict[str, List[Any]]) -> List[Dict[str, Any]]:
    """Cartesian product of the sweep grid, in declaration order."""
    if not grid:
        raise ConfigError("sweep grid is empty; set sweep.rho and/or sweep.n_learners")
    points: List[Dict[str, Any]] = [{}]
    for key, values in grid.items():
        points = [{**p, key: v} for p in points for v in values]
    return points


def plan_with(plan: ExperimentPlan, point: Dict[str, Any]) -> Tuple[RunSpec, str]:
    """RunSpec for one sweep point and a short label for it."""
    booster = BoosterConfig(**{**asdict(plan.run.booster), **point})
    label = ",".join(f"{k}={v}" for k, v in point.items())
    return replace(plan.run, booster=booster), label
