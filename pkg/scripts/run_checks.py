"""Run every suite on the bundled fixtures and print a per-suite timing table.

    python3 scripts/run_checks.py [--seed 0] [--trials 200]
"""

import argparse
import time

from isotwist.suites import SuiteOptions, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--max-degree", type=int, default=5)
    args = ap.parse_args()
    opts = SuiteOptions(max_degree=args.max_degree, trials=args.trials, seed=args.seed)

    print(f"{'suite':<10} {'checks':>7} {'failed':>7} {'seconds':>8}")
    bad = []
    for suite in ("algebra", "hopf", "calculus", "spectral"):
        t = time.perf_counter()
        rep = run_suite(suite, options=opts)
        dt = time.perf_counter() - t
        fails = rep.failures()
        bad += fails
        print(f"{suite:<10} {len(rep.checks):>7} {len(fails):>7} {dt:>8.2f}")
    for c in bad:
        print("FAIL", c.id, c.counterexample or c.detail or "")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
