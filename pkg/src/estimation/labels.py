"""
Label-domain types. Labels are 1-based everywhere outside array indexing.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.constants import FIRST_LABEL, MIN_CLASSES
from src.exceptions import InvalidSpaceError


@dataclass(frozen=True)
class LabelSpace:
    """The label set [k] = {1, ..., k}."""
    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < MIN_CLASSES:
            raise InvalidSpaceError(f"label space needs k >= {MIN_CLASSES}, got {self.k}")

    def check(self, label: int) -> int:
        label = int(label)
        if not FIRST_LABEL <= label <= self.k:
            raise InvalidSpaceError(f"label {label} outside 1..{self.k}")
        return label

    def labels(self) -> range:
        return range(FIRST_LABEL, self.k + 1)

    def basis(self, label: int) -> np.ndarray:
        """Standard basis vector e_label."""
        e = np.zeros(self.k)
        e[self.check(label) - 1] = 1.0
        return e


@dataclass(frozen=True)
class Example:
    """One round's input: a dense feature vector and, in harness data, its label."""
    features: np.ndarray
    true_label: Optional[int] = None
    index: int = field(default=-1, compare=False)

    def validate(self, space: LabelSpace) -> "Example":
        if self.true_label is not None:
            space.check(self.true_label)
        return self
