"""
Exploration-rate schedules.

`constant` uses the configured rho. The two theory schedules need the
stream length T up front and are clamped into [0, RHO_CEILING]:

    bbm_theory:  rho = k^{7/4} N^{1/4} / sqrt(T)
    ada_theory:  rho = k N^{2/3} / (T * sum_i gamma_i^2)^{1/3}

sum_i gamma_i^2 is unknown at runtime, so ada_theory takes it from config.
"""

import logging
from typing import Optional

from src.exceptions import ConfigError, InvalidParameterError

logger = logging.getLogger(__name__)

RHO_CEILING = 0.999

SCHEDULES = ("constant", "bbm_theory", "ada_theory")


def resolve_rho(schedule: str, rho: float, k: int, n_learners: int, total_rounds: int,
                sum_gamma_sq: Optional[float] = None) -> float:
    if schedule == "constant":
        return rho
    if total_rounds < 1:
        raise InvalidParameterError(f"{schedule} schedule needs T >= 1, got {total_rounds}")

    if schedule == "bbm_theory":
        value = k ** 1.75 * n_learners ** 0.25 / total_rounds ** 0.5
    elif schedule == "ada_theory":
        if sum_gamma_sq is None or sum_gamma_sq <= 0:
            raise ConfigError("ada_theory schedule needs a positive sum_gamma_sq")
        value = k * n_learners ** (2.0 / 3.0) / (total_rounds * sum_gamma_sq) ** (1.0 / 3.0)
    else:
        raise ConfigError(f"unknown rho schedule {schedule!r}; choose from {SCHEDULES}")

    clamped = min(max(value, 0.0), RHO_CEILING)
    if clamped != value:
        logger.warning("%s schedule gave rho=%.4f, clamped to %.4f", schedule, value, clamped)
    return clamped
