"""
EXPERIMENT JOURNAL - per-output-directory record of what the harness did
========================================================================

Files written under the output directory:
    journal.txt     human-readable, one timestamped line per event
    events.jsonl    one JSON object per event (timestamp, type, payload)
    run_stats.json  counters, reloaded when the directory is reused

Event types:
1. RUN_STARTED      - experiment launched (config summary)
2. SEED_FINISHED    - one seeded pass finished (accuracies)
3. RUN_FINISHED     - all seeds aggregated
4. RUN_FAILED       - experiment aborted with an error
5. SWEEP_POINT      - one grid point of a sweep evaluated
6. CHECK_RESULT     - one verification check finished
"""

import json
import logging
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

EVENT_TYPES = ("RUN_STARTED", "SEED_FINISHED", "RUN_FINISHED", "RUN_FAILED",
               "SWEEP_POINT", "CHECK_RESULT")


class ExperimentJournal:
    """Thread-safe journal; seed workers report into one instance."""

    def __init__(self, out_dir: str):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

        self.journal_file = self.out_dir / "journal.txt"
        self.events_file = self.out_dir / "events.jsonl"
        self.stats_file = self.out_dir / "run_stats.json"

        self._lock = threading.Lock()
        self.stats = {
            "runs_started": 0,
            "runs_finished": 0,
            "runs_failed": 0,
            "seeds_finished": 0,
            "rounds_processed": 0,
            "sweep_points": 0,
            "checks_passed": 0,
            "checks_failed": 0,
        }
        self._load_stats()

    def log_run_started(self, name: str, config: Dict[str, Any], seeds):
        self._bump("runs_started")
        self._record("RUN_STARTED", {"name": name, "seeds": list(seeds), "config": config},
                     f"{name} | seeds={list(seeds)} | {config.get('algorithm')}/{config.get('mode')}"
                     f" N={config.get('n_learners')} rho={config.get('rho')}")

    def log_seed_finished(self, name: str, seed: int, rounds: int, total_accuracy: float,
                          asymptotic_accuracy: float):
        with self._lock:
            self.stats["seeds_finished"] += 1
            self.stats["rounds_processed"] += int(rounds)
        self._record("SEED_FINISHED",
                     {"name": name, "seed": seed, "rounds": rounds,
                      "total_accuracy": total_accuracy, "asymptotic_accuracy": asymptotic_accuracy},
                     f"{name} | seed {seed} | {rounds} rounds | total {total_accuracy:.4f}"
                     f" | asymptotic {asymptotic_accuracy:.4f}")

    def log_run_finished(self, name: str, summary: Dict[str, Any]):
        self._bump("runs_finished")
        self._record("RUN_FINISHED", {"name": name, "summary": summary},
                     f"{name} | asymptotic {summary.get('asymptotic_accuracy_mean', float('nan')):.4f}"
                     f" ± {summary.get('asymptotic_accuracy_std', float('nan')):.4f}")

    def log_run_failed(self, name: str, error: BaseException):
        self._bump("runs_failed")
        self._record("RUN_FAILED", {"name": name, "error": type(error).__name__, "message": str(error)},
                     f"{name} | {type(error).__name__}: {error}")

    def log_sweep_point(self, point: Dict[str, Any], asymptotic_mean: float):
        self._bump("sweep_points")
        self._record("SWEEP_POINT", {"point": point, "asymptotic_accuracy_mean": asymptotic_mean},
                     f"{point} | asymptotic {asymptotic_mean:.4f}")

    def log_check_result(self, name: str, passed: bool, margin: Optional[float] = None):
        self._bump("checks_passed" if passed else "checks_failed")
        self._record("CHECK_RESULT", {"check": name, "passed": passed, "margin": margin},
                     f"{name} | {'PASS' if passed else 'FAIL'} | margin {margin}")

    def _bump(self, key: str):
        with self._lock:
            self.stats[key] += 1

    def _record(self, event_type: str, payload: Dict[str, Any], message: str):
        timestamp = datetime.now(timezone.utc).isoformat()
        event = {"timestamp": timestamp, "type": event_type, **payload}
        with self._lock:
            with open(self.journal_file, "a", encoding="utf-8") as f:
                f.write(f"[{timestamp}] [{event_type}] {message}\n")
            with open(self.events_file, "a", encoding="utf-8") as f:
                f.write(json.dumps(event, default=_jsonable) + "\n")
            self._save_stats()
        logger.debug("[%s] %s", event_type, message)

    def _save_stats(self):
        with open(self.stats_file, "w", encoding="utf-8") as f:
            json.dump(self.stats, f, indent=2)

    def _load_stats(self):
        if not self.stats_file.exists():
            return
        try:
            with open(self.stats_file, "r", encoding="utf-8") as f:
                self.stats.update(json.load(f))
        except (IOError, OSError, json.JSONDecodeError) as e:
            logger.warning("could not load %s, starting fresh counters: %s", self.stats_file, e)

    def get_summary(self) -> Dict[str, Any]:
        with self._lock:
            return dict(self.stats)


def _jsonable(value):
    if hasattr(value, "tolist"):
        return value.tolist()
    if hasattr(value, "__dict__"):
        return vars(value)
    return str(value)
