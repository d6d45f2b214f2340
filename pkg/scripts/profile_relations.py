"""Per-relation timing for the toroidal suite, to guide budget choices.

Usage: python3 scripts/profile_relations.py [--m 3] [--n 1] [--ell 1] [--modes 1]

Prints mean evaluation time per battery vector, grouped by relation id,
slowest first.  Symbolic mode only; the numeric pre-screen scales the
same way with smaller constants.
"""

import argparse
import sys
import time
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from qtschur.verify import RunConfig, _SuiteContext


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--ell", type=int, default=1)
    ap.add_argument("--modes", type=int, default=1)
    args = ap.parse_args()

    cfg = RunConfig(m=args.m, n=args.n, ell=args.ell, modes=args.modes, mode="symbolic")
    cfg.validate("toroidal")
    ctx = _SuiteContext("toroidal", cfg)
    spent = defaultdict(float)
    counts = defaultdict(int)
    for idx, (relation, _, _, _) in enumerate(ctx.instances):
        start = time.perf_counter()
        rows = ctx.rows_for(idx)
        spent[relation] += time.perf_counter() - start
        counts[relation] += len(rows)

    total = sum(spent.values())
    print(f"{'relation':<16} {'rows':>8} {'total':>9} {'per row':>10}")
    for relation in sorted(spent, key=spent.get, reverse=True):
        per = spent[relation] / counts[relation] if counts[relation] else 0.0
        print(
            f"{relation:<16} {counts[relation]:>8} {spent[relation]:>8.2f}s"
            f" {per * 1000:>8.3f}ms"
        )
    print(f"{'all':<16} {sum(counts.values()):>8} {total:>8.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
