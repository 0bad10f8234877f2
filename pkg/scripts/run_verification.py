#!/usr/bin/env python3
"""Run every registered check and write a JSON report (one entry per check)."""
import argparse
import json
import sys

from compgraphs.verifier import run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="verification.json")
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--serial", action="store_true")
    args = ap.parse_args()

    reports = run_all(parallel=not args.serial, jobs=args.jobs)
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.check_id:42s} {r.universe_size:>10d}  {r.elapsed:6.2f}s")
    with open(args.out, "w") as fh:
        json.dump([r.to_dict(with_elapsed=True) for r in reports], fh, sort_keys=True, indent=2)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed; report in {args.out}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
