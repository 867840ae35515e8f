"""Recompute the (16,6,2) row of the inequivalent-cube table across all 14 groups of order 16.

This is a long-running job (hours to days without a budget); it is not part of
the test suite.  A time budget yields partial counts and a mu >= lower bound.

    python3 scripts/table4_16_6_2.py --budget 600
"""
from __future__ import annotations

import argparse
import sys
import time

from projcubes.classify import classify_nd_diffsets, groups_for_parameters, table4_counts
from projcubes.algebra import builtin_group


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--budget", type=float, default=None,
                        help="time budget in seconds per group (default: unbounded)")
    args = parser.parse_args()

    results = {}
    for name in groups_for_parameters(16, 6, 2):
        t0 = time.monotonic()
        res = classify_nd_diffsets(builtin_group(name), 6, 2, budget_seconds=args.budget)
        dt = time.monotonic() - t0
        mu = "none" if res.mu is None else (f"{res.mu}" if res.mu_exact else f">={res.mu}")
        print(f"{name}: mu={mu} in {dt:.1f}s", file=sys.stderr)
        results[name] = res

    merged = table4_counts(16, 6, 2, results=results)
    for n in sorted(merged):
        print(f"n={n} classes={merged[n]}")
    if any(not res.mu_exact for res in results.values()):
        print("partial: at least one group hit the time budget; counts are lower bounds")
    return 0


if __name__ == "__main__":
    sys.exit(main())
