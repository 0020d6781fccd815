#!/usr/bin/env python3
"""Run sweep suites and print a per-suite tally; full reports go to an ndjson file.

    python3 scripts/run_sweeps.py --suites qps,quantum,cartan --max 5 --out sweeps.ndjson
"""

from __future__ import annotations

import argparse
import time
from collections import defaultdict

from qpfaff.cli import ALL_SUITES, SweepConfig, run_sweep


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--suites", default="all")
    ap.add_argument("--max", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--primes", default="2,3")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="sweeps.ndjson")
    args = ap.parse_args()

    suites = list(ALL_SUITES) if args.suites == "all" else args.suites.split(",")
    cfg = SweepConfig(
        max_m=args.max, max_s=args.max, max_t=args.max, max_n=args.max_n,
        primes=[int(p) for p in args.primes.split(",")], seed=args.seed, suites=suites,
    )
    tally = defaultdict(lambda: [0, 0, 0.0])
    start = time.perf_counter()
    with open(args.out, "w") as fh:
        for rep in run_sweep(cfg):
            fh.write(rep.to_json() + "\n")
            row = tally[rep.suite]
            row[0] += 1
            row[1] += not rep.equal
            row[2] += rep.elapsed

    print(f"{'suite':<20}{'checks':>8}{'failed':>8}{'seconds':>10}")
    for suite, (n, bad, secs) in tally.items():
        print(f"{suite:<20}{n:>8}{bad:>8}{secs:>10.2f}")
    failed = sum(r[1] for r in tally.values())
    print(f"total {sum(r[0] for r in tally.values())} checks, {failed} failed, "
          f"{time.perf_counter() - start:.1f}s wall; reports in {args.out}")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
