"""Sweep every suite over a small (m, n, ell) grid and tabulate results.

Usage: python3 scripts/sweep_suites.py [--modes R] [--mode both|symbolic|numeric]

Configurations a suite rejects (wrap degeneracy, kappa too small) are
reported as skipped rather than aborting the sweep.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from qtschur.verify import SUITES, ConfigError, RunConfig, run_suite

GRID = [
    (3, 1, 1),
    (3, 1, 2),
    (2, 2, 2),
    (3, 2, 1),
    (3, 2, 2),
]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--modes", type=int, default=1)
    ap.add_argument("--mode", default="both", choices=("symbolic", "numeric", "both"))
    args = ap.parse_args()

    failures = 0
    print(f"{'suite':<10} {'m':>2} {'n':>2} {'ell':>3} {'rows':>8} {'fail':>5} {'time':>8}")
    for suite in SUITES:
        for m, n, ell in GRID:
            cfg = RunConfig(m=m, n=n, ell=ell, modes=args.modes, mode=args.mode)
            try:
                cfg.validate(suite)
            except ConfigError as exc:
                print(f"{suite:<10} {m:>2} {n:>2} {ell:>3} {'skipped':>8}  ({exc})")
                continue
            start = time.perf_counter()
            report = run_suite(suite, cfg)
            elapsed = time.perf_counter() - start
            summary = report.summary()
            failures += summary["fail"]
            print(
                f"{suite:<10} {m:>2} {n:>2} {ell:>3} {len(report.results):>8} "
                f"{summary['fail']:>5} {elapsed:>7.1f}s"
            )
    print("all pass" if failures == 0 else f"{failures} failing rows")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
