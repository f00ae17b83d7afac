"""
CSV ingestion.

Labels are mapped to 1..k by order of first appearance. Features must be
numeric; they are min-max scaled per column unless normalization is off.
Missing numeric cells either raise or become 0 (`missing = "zero"`).
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.constants import MIN_CLASSES
from src.estimation.labels import Example, LabelSpace
from src.exceptions import (
    ConfigError,
    DatasetNotFoundError,
    EmptyDatasetError,
    MissingColumnError,
    MissingValueError,
    NonNumericFeatureError,
)

logger = logging.getLogger(__name__)

MISSING_POLICIES = ("error", "zero")


@dataclass(frozen=True)
class DatasetSpec:
    path: str
    label_column: str
    k: Optional[int] = None
    duplication: int = 1
    seeds: Tuple[int, ...] = (0,)
    normalize: bool = True
    missing: str = "error"
    name: str = ""

    def __post_init__(self):
        if int(self.duplication) != self.duplication or self.duplication < 1:
            raise ConfigError(f"duplication must be an integer >= 1, got {self.duplication}")
        if self.missing not in MISSING_POLICIES:
            raise ConfigError(f"missing must be one of {MISSING_POLICIES}, got {self.missing!r}")

    @property
    def display_name(self) -> str:
        return self.name or Path(self.path).stem


@dataclass
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    k: int
    feature_names: List[str] = field(default_factory=list)
    label_names: Dict[int, str] = field(default_factory=dict)
    name: str = ""

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def space(self) -> LabelSpace:
        return LabelSpace(self.k)

    def example(self, row: int) -> Example:
        return Example(self.features[row], int(self.labels[row]), index=row)


def _map_labels(raw: pd.Series) -> Tuple[np.ndarray, Dict[int, str]]:
    codes, uniques = pd.factorize(raw.astype(str), sort=False)
    labels = codes.astype(int) + 1
    return labels, {i + 1: str(u) for i, u in enumerate(uniques)}


def min_max_normalize(features: np.ndarray) -> np.ndarray:
    low = features.min(axis=0)
    span = features.max(axis=0) - low
    span[span == 0] = 1.0
    return (features - low) / span


def load_csv(spec: DatasetSpec) -> Dataset:
    path = Path(spec.path)
    if not path.is_file():
        raise DatasetNotFoundError(path)
    try:
        frame = pd.read_csv(path, encoding="utf-8", skipinitialspace=True)
    except pd.errors.EmptyDataError as e:
        raise EmptyDatasetError(f"{path} is empty") from e
    if frame.empty:
        raise EmptyDatasetError(f"{path} has a header but no rows")
    if spec.label_column not in frame.columns:
        raise MissingColumnError(f"{path} has no label column {spec.label_column!r}; "
                                 f"columns are {list(frame.columns)}")

    labels, label_names = _map_labels(frame[spec.label_column])
    feature_frame = frame.drop(columns=[spec.label_column])
    if feature_frame.shape[1] == 0:
        raise MissingColumnError(f"{path} has no feature columns")

    for col in feature_frame.columns:
        converted = pd.to_numeric(feature_frame[col], errors="coerce")
        bad = converted.isna() & feature_frame[col].notna()
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            raise NonNumericFeatureError(
                f"{path}: column {col!r} row {row + 1} is not numeric: {feature_frame[col].iloc[row]!r}")
        feature_frame[col] = converted

    n_missing = int(feature_frame.isna().sum().sum())
    if n_missing:
        if spec.missing == "error":
            raise MissingValueError(f"{path} has {n_missing} missing feature values")
        logger.warning("%s: filling %d missing values with 0", path, n_missing)
        feature_frame = feature_frame.fillna(0.0)

    features = feature_frame.to_numpy(dtype=float)
    if spec.normalize:
        features = min_max_normalize(features)

    k = len(label_names)
    if spec.k is not None:
        if k > spec.k:
            raise ConfigError(f"{path} has {k} distinct labels but k = {spec.k} was configured")
        k = spec.k
    if k < MIN_CLASSES:
        raise EmptyDatasetError(f"{path} has a single label; need at least {MIN_CLASSES}")

    logger.info("loaded %s: %d rows, %d features, k=%d", path.name, len(labels), features.shape[1], k)
    return Dataset(features=features, labels=labels, k=k,
                   feature_names=[str(c) for c in feature_frame.columns],
                   label_names=label_names, name=spec.display_name)
