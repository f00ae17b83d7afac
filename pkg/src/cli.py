#!/usr/bin/env python3
"""
banditboost command line.

    run      one experiment (all seeds), writes report.json + curve.csv
    sweep    one experiment per grid point, writes sweep.csv + sweep.json
    curve    re-emit learning curves from a saved report as CSV
    verify   property suites; exit 0 iff every check passes

Exit codes: 0 ok, 1 verification failed, 2 configuration or parameter
error, 3 data or report error.
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from src.config import build_plan, load_config, plan_with, sweep_points
from src.constants import (
    EXIT_CHECK_FAILED,
    EXIT_CONFIG_ERROR,
    EXIT_DATA_ERROR,
    EXIT_OK,
    LOG_LEVEL_ENV_VAR,
)
from src.exceptions import (
    BanditBoostError,
    ConfigError,
    DataLoadError,
    InvalidParameterError,
    InvalidSpaceError,
)
from src.harness.experiment import run_experiment
from src.harness.journal import ExperimentJournal
from src.harness.reporting import (
    curves_from_report,
    load_report,
    write_curve_csv,
    write_json,
    write_table_csv,
)
from src.verification.checks import SUITES, run_checks

logger = logging.getLogger("banditboost")


def parse_seeds(text: str) -> List[int]:
    """'7' -> [7]; '0,3,5' -> [0, 3, 5]; '0-4' -> [0, 1, 2, 3, 4]."""
    seeds: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-", 1)
                seeds.extend(range(int(lo), int(hi) + 1))
            elif part:
                seeds.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}")
    if not seeds:
        raise argparse.ArgumentTypeError("seed list is empty")
    return seeds


def _add_run_flags(p: argparse.ArgumentParser):
    p.add_argument('--config', help='JSON or TOML config file')
    p.add_argument('--seed', type=int, help='Run a single seed')
    p.add_argument('--seeds', type=parse_seeds, help="Seed list: '0-19' or '1,4,9'")
    p.add_argument('--rho', type=float, help='Exploration rate in [0, 1)')
    p.add_argument('--n-learners', type=int, help='Number of weak learners N')
    p.add_argument('--gamma', type=float, help='Edge used by the BBM potentials')
    p.add_argument('--algorithm', choices=['bbm', 'ada'])
    p.add_argument('--mode', choices=['bandit', 'full'])
    p.add_argument('--preset', choices=['OptBandit', 'AdaBandit', 'OptFull', 'AdaFull'])
    p.add_argument('--duplication', type=int, help='Shuffled copies of the dataset')
    p.add_argument('--threads', type=int, help='Worker threads (default: BANDITBOOST_THREADS or CPU count)')
    p.add_argument('--out', help='Output directory')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='banditboost',
                                     description='Online boosting with bandit feedback')
    parser.add_argument('--log-level', default=None,
                        help=f'DEBUG, INFO, WARNING... (default: ${LOG_LEVEL_ENV_VAR} or INFO)')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='Run one experiment over all seeds')
    _add_run_flags(run)
    run.set_defaults(handler=cmd_run)

    sweep = sub.add_parser('sweep', help='Grid search over rho and/or N from the config')
    _add_run_flags(sweep)
    sweep.set_defaults(handler=cmd_sweep)

    curve = sub.add_parser('curve', help='Re-emit learning curves from a saved report')
    curve.add_argument('--report', required=True, help='report.json written by run')
    curve.add_argument('--out', required=True, help='CSV file to write')
    curve.set_defaults(handler=cmd_curve)

    verify = sub.add_parser('verify', help='Run the property suites')
    verify.add_argument('--checks', default=None,
                        help=f"Comma-separated subset of {','.join(SUITES)}")
    verify.add_argument('--out', help='Directory for checks.json and the journal')
    verify.set_defaults(handler=cmd_verify)
    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, object]:
    seeds = [args.seed] if args.seed is not None else args.seeds
    return {
        'booster.rho': args.rho,
        'booster.n_learners': args.n_learners,
        'booster.gamma': args.gamma,
        'booster.algorithm': args.algorithm,
        'booster.mode': args.mode,
        'booster.preset': args.preset,
        'dataset.duplication': args.duplication,
        'experiment.seeds': seeds,
        'experiment.threads': args.threads,
        'experiment.out': args.out,
    }


def _plan(args):
    config = load_config(args.config, overrides_from_args(args))
    return build_plan(config)


def cmd_run(args) -> int:
    plan = _plan(args)
    out = Path(plan.out)
    journal = ExperimentJournal(str(out))
    report = run_experiment(plan.source, plan.run, plan.seeds, threads=plan.threads,
                            journal=journal, name=plan.name)

    write_json(out / 'report.json', report.to_dict(include_records=plan.run.save_records))
    write_curve_csv(out / 'curve.csv', report.curves())
    logger.info("wrote %s and %s", out / 'report.json', out / 'curve.csv')

    summary = report.summary
    print(f"✅ {plan.name}: {len(plan.seeds)} seeds")
    print(f"   Total accuracy:       {summary['total_accuracy_mean']:.4f} ± {summary['total_accuracy_std']:.4f}")
    print(f"   Asymptotic accuracy:  {summary['asymptotic_accuracy_mean']:.4f} ± {summary['asymptotic_accuracy_std']:.4f}")
    print(f"   Report:               {out / 'report.json'}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    plan = _plan(args)
    points = sweep_points(plan.sweep)
    out = Path(plan.out)
    journal = ExperimentJournal(str(out))

    rows = []
    for point in points:
        run, label = plan_with(plan, point)
        report = run_experiment(plan.source, run, plan.seeds, threads=plan.threads,
                                journal=journal, name=f"{plan.name}[{label}]")
        summary = report.summary
        journal.log_sweep_point(point, summary['asymptotic_accuracy_mean'])
        rows.append({**point, **{k: summary[k] for k in (
            'total_accuracy_mean', 'total_accuracy_std',
            'asymptotic_accuracy_mean', 'asymptotic_accuracy_std')}, 'n_seeds': len(plan.seeds)})

    best = max(range(len(rows)), key=lambda i: rows[i]['asymptotic_accuracy_mean'])
    for i, row in enumerate(rows):
        row['best'] = i == best

    write_table_csv(out / 'sweep.csv', rows)
    write_json(out / 'sweep.json', {'name': plan.name, 'seeds': plan.seeds, 'rows': rows})
    logger.info("sweep %s: best point %s", plan.name, points[best])

    print(f"✅ Sweep {plan.name}: {len(rows)} grid points")
    for row in rows:
        marker = "⭐" if row['best'] else "  "
        point = ", ".join(f"{k}={row[k]}" for k in plan.sweep)
        print(f" {marker} {point:30s} asymptotic {row['asymptotic_accuracy_mean']:.4f}"
              f" ± {row['asymptotic_accuracy_std']:.4f}")
    return EXIT_OK


def cmd_curve(args) -> int:
    report = load_report(args.report)
    path = write_curve_csv(args.out, curves_from_report(report))
    print(f"✅ Learning curves for {len(report['per_seed'])} seeds written to {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    names = [n.strip() for n in args.checks.split(',')] if args.checks else list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigError(f"unknown checks {unknown}; choose from {list(SUITES)}")

    journal = ExperimentJournal(args.out) if args.out else None
    results = run_checks(names, journal=journal)
    if args.out:
        write_json(Path(args.out) / 'checks.json', results)

    print("\n" + "=" * 70)
    print("🔍 PROPERTY CHECKS")
    print("=" * 70)
    for name, result in results.items():
        status = "✅" if result['passed'] else "❌"
        print(f"{status} {name:12s} max error {result['max_error']:.3e}  tolerance {result['tolerance']:.1e}"
              f"  margin {result['margin']:+.3e}  ({result['cases']} cases, {result['elapsed_s']:.2f}s)")
        for issue in result['issues'][:5]:
            print(f"     {issue}")
    print("=" * 70)

    failed = [n for n, r in results.items() if not r['passed']]
    if failed:
        print(f"❌ {len(failed)} check(s) failed: {', '.join(failed)}")
        return EXIT_CHECK_FAILED
    print("✅ All checks passed")
    return EXIT_OK


def setup_logging(level: Optional[str]):
    level = (level or os.getenv(LOG_LEVEL_ENV_VAR) or "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO),
                        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    try:
        return args.handler(args)
    except (ConfigError, InvalidParameterError, InvalidSpaceError) as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except DataLoadError as e:
        print(f"❌ Data error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except BanditBoostError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
