"""
Synthetic streams.

oracle-edge        labels uniform on 1..k, one constant feature; pair with
                   oracle weak learners of edge gamma
threshold-concept  x ~ U[0, 1]^d, label = bin of x_0 among k equal-width
                   bins; with probability `noise` the label is redrawn
gaussian-mixture   label uniform, x_0 ~ N(mu_label, 1) with means evenly
                   spaced on [-spread, spread], other features N(0, 1)
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import norm

from src.constants import MIN_CLASSES
from src.exceptions import ConfigError, InvalidParameterError
from src.harness.datasets import Dataset
from src.learners.oracle import OracleLearnerConfig, oracle_wl
from src.rng import SeedLike, make_rng

logger = logging.getLogger(__name__)

GENERATORS = ("oracle-edge", "threshold-concept", "gaussian-mixture")


@dataclass(frozen=True)
class SyntheticSpec:
    generator: str
    k: int
    T: int
    gamma: float = 0.0
    noise: float = 0.0
    n_features: int = 1
    spread: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ConfigError(f"generator must be one of {GENERATORS}, got {self.generator!r}")
        if self.k < MIN_CLASSES:
            raise InvalidParameterError(f"k must be >= {MIN_CLASSES}, got {self.k}")
        if self.T < 1 or self.n_features < 1:
            raise InvalidParameterError("T and n_features must be >= 1")
        if not 0.0 <= self.gamma <= 1.0 or not 0.0 <= self.noise <= 1.0:
            raise InvalidParameterError("gamma and noise must lie in [0, 1]")

    @property
    def name(self) -> str:
        return f"{self.generator}-k{self.k}-T{self.T}"


def mixture_means(k: int, spread: float) -> np.ndarray:
    return np.linspace(-spread, spread, k)


def synth_generate(spec: SyntheticSpec, rng: Optional[np.random.Generator] = None) -> Dataset:
    rng = rng if rng is not None else make_rng(spec.seed)
    labels = rng.integers(1, spec.k + 1, size=spec.T)

    if spec.generator == "oracle-edge":
        features = np.zeros((spec.T, 1))
    elif spec.generator == "threshold-concept":
        features = rng.random((spec.T, spec.n_features))
        labels = threshold_labels(features, spec.k)
        if spec.noise > 0:
            flip = rng.random(spec.T) < spec.noise
            labels[flip] = rng.integers(1, spec.k + 1, size=int(flip.sum()))
    else:
        features = rng.standard_normal((spec.T, spec.n_features))
        features[:, 0] += mixture_means(spec.k, spec.spread)[labels - 1]

    logger.debug("generated %s", spec.name)
    return Dataset(features=features, labels=labels.astype(int), k=spec.k,
                   feature_names=[f"x{i}" for i in range(features.shape[1])],
                   label_names={l: str(l) for l in range(1, spec.k + 1)}, name=spec.name)


def threshold_labels(features: np.ndarray, k: int) -> np.ndarray:
    return np.minimum((features[:, 0] * k).astype(int), k - 1) + 1


def bayes_predict(spec: SyntheticSpec, features: np.ndarray) -> np.ndarray:
    """Bayes-optimal labeler for the concept generators."""
    if spec.generator == "threshold-concept":
        return threshold_labels(features, spec.k)
    if spec.generator == "gaussian-mixture":
        means = mixture_means(spec.k, spec.spread)
        return np.argmin(np.abs(features[:, [0]] - means[None, :]), axis=1) + 1
    raise InvalidParameterError(f"{spec.generator} has no feature-based Bayes labeler")


def bayes_error(spec: SyntheticSpec) -> float:
    if spec.generator == "threshold-concept":
        return spec.noise * (spec.k - 1) / spec.k
    if spec.generator == "gaussian-mixture":
        half_gap = spec.spread / (spec.k - 1)
        return 2.0 * (spec.k - 1) / spec.k * float(norm.cdf(-half_gap))
    # uniform labels with no informative feature
    return 1.0 - 1.0 / spec.k


def simulated_learner_predictions(labels: np.ndarray, k: int, gamma: float,
                                  rng: np.random.Generator) -> np.ndarray:
    """One oracle-learner draw per label, each from u^y_gamma."""
    config = OracleLearnerConfig(gamma)
    return np.array([oracle_wl(config, int(y), k, rng) for y in labels], dtype=int)


def expected_oracle_accuracy(k: int, gamma: float) -> float:
    return gamma + (1.0 - gamma) / k


def oracle_accuracy_tolerance(n: int) -> float:
    """Four binomial standard errors at the worst case p = 1/2."""
    return 4.0 * math.sqrt(0.25 / n)
