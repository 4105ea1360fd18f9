#!/usr/bin/env python3
"""Run the oracle sweep over all G(p, a, e, f) with e f <= BOUND and print a summary.

    python3 scripts/sweep.py --bound 100 [--p 2 3] [--a 1 2] [--census-m 2] [--failures-only]
"""

import argparse
import json
import sys

from littlegroups.verification import VerifyConfig, run_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=100)
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--a", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--census-m", type=int, default=None)
    ap.add_argument("--json", action="store_true", help="print the stats as JSON only")
    args = ap.parse_args()

    rep = run_sweep(args.bound, tuple(args.p), tuple(args.a), VerifyConfig(census_m=args.census_m))
    if args.json:
        print(json.dumps({"groups": rep.groups, "seconds": round(rep.seconds, 2), **rep.stats, "failures": len(rep.failures)}))
    else:
        print(f"{rep.groups} groups, {rep.orbits} orbits in {rep.seconds:.1f}s")
        for k, v in sorted(rep.stats.items()):
            print(f"  {k:12s} {v}")
        for params, c in rep.failures:
            print(f"FAIL {params} {c.name}: {c.detail}")
        print("PASS" if rep.passed else "FAIL")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
