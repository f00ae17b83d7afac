"""
Report files: JSON experiment reports and flat learning-curve CSVs.

All files are written to a temporary sibling and moved into place with
os.replace, so readers never see a half-written report.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List

import numpy as np
import pandas as pd

from src.constants import REPORT_SCHEMA_VERSION
from src.exceptions import ReportFormatError

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["round", "window_accuracy", "seed"]


def _atomic_write(path: Path, writer) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            writer(f)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def write_json(path, payload: Dict[str, Any]) -> Path:
    return _atomic_write(path, lambda f: json.dump(payload, f, indent=2, sort_keys=True,
                                                   default=_default, allow_nan=True))


def curve_frame(curves: Iterable[Dict[str, Any]]) -> pd.DataFrame:
    """Stack per-seed curves ({'seed', 'rounds', 'values'}) into one long table."""
    frames = [pd.DataFrame({"round": c["rounds"], "window_accuracy": c["values"], "seed": c["seed"]})
              for c in curves]
    if not frames:
        return pd.DataFrame(columns=CURVE_COLUMNS)
    return pd.concat(frames, ignore_index=True)[CURVE_COLUMNS]


def write_curve_csv(path, curves: Iterable[Dict[str, Any]]) -> Path:
    frame = curve_frame(curves)
    return _atomic_write(path, lambda f: frame.to_csv(f, index=False))


def write_table_csv(path, rows: List[Dict[str, Any]]) -> Path:
    frame = pd.DataFrame(rows)
    return _atomic_write(path, lambda f: frame.to_csv(f, index=False))


class ReportValidator:
    """Schema check for saved experiment reports."""

    REQUIRED_FIELDS = {
        'report': ['schema_version', 'name', 'config', 'seeds', 'summary', 'per_seed'],
        'summary': ['total_accuracy_mean', 'total_accuracy_std',
                    'asymptotic_accuracy_mean', 'asymptotic_accuracy_std'],
        'per_seed': ['seed', 'rounds', 'total_accuracy', 'asymptotic_accuracy',
                     'curve', 'empirical_edges', 'zero_estimate_rounds'],
        'curve': ['rounds', 'values'],
    }

    def __init__(self, path):
        self.path = Path(path)
        self.errors: List[str] = []
        self.warnings: List[str] = []

    def validate(self) -> Dict[str, Any]:
        """Load and check the report; raises ReportFormatError on any error."""
        if not self.path.exists():
            raise ReportFormatError(f"report not found: {self.path}")
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                report = json.load(f)
        except json.JSONDecodeError as e:
            raise ReportFormatError(f"{self.path}: invalid JSON ({e})") from e

        if not isinstance(report, dict):
            raise ReportFormatError(f"{self.path}: top level must be an object")
        self._require(report, 'report', "report")
        if self.errors:
            raise ReportFormatError("; ".join(self.errors))

        version = report['schema_version']
        if version != REPORT_SCHEMA_VERSION:
            self.warnings.append(f"schema version {version}, reader expects {REPORT_SCHEMA_VERSION}")
        self._require(report['summary'], 'summary', "summary")
        for i, seed_report in enumerate(report['per_seed']):
            where = f"per_seed[{i}]"
            self._require(seed_report, 'per_seed', where)
            curve = seed_report.get('curve') if isinstance(seed_report, dict) else None
            if curve is not None:
                self._require(curve, 'curve', f"{where}.curve")
                if isinstance(curve, dict) and len(curve.get('rounds', [])) != len(curve.get('values', [])):
                    self.errors.append(f"{where}.curve: rounds and values differ in length")

        for w in self.warnings:
            logger.warning("%s: %s", self.path, w)
        if self.errors:
            raise ReportFormatError(f"{self.path}: " + "; ".join(self.errors))
        return report

    def _require(self, obj, kind: str, where: str):
        if not isinstance(obj, dict):
            self.errors.append(f"{where} must be an object")
            return
        missing = [f for f in self.REQUIRED_FIELDS[kind] if f not in obj]
        if missing:
            self.errors.append(f"{where}: missing fields {missing}")


def load_report(path) -> Dict[str, Any]:
    return ReportValidator(path).validate()


def curves_from_report(report: Dict[str, Any]) -> List[Dict[str, Any]]:
    return [{"seed": r["seed"], "rounds": r["curve"]["rounds"], "values": r["curve"]["values"]}
            for r in report["per_seed"]]
