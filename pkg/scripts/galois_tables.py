#!/usr/bin/env python3
"""Tables of irreducible mod-p representations of the tame Galois group.

For each residue field F_q (q = p^a) prints the level data (e_n, s_n, f_n)
and, per degree, the unramified count and the ramified records grouped by
r = ord(p mod e).

    python3 scripts/galois_tables.py [--p 2 3] [--a 1 2] [--max-degree 4]
"""

import argparse
from collections import Counter

from littlegroups.tame_galois import (
    PFieldParams,
    classify_galois_reps,
    level_params,
    ramification_partition,
    unramified_count,
)


def table(K: PFieldParams, N: int) -> None:
    print(f"== p = {K.p}, q = {K.q}")
    for n in range(1, N + 1):
        lp = level_params(K, n)
        print(f"  level {n}: e = {lp.e_n}, s = {lp.s_n}, f = {lp.f_n}, |G| = {lp.e_n * lp.f_n}")
    recs = classify_galois_reps(K, N)
    for d in range(1, N + 1):
        here = [r for r in recs if r.degree == d]
        unr = sum(r.unramified for r in here)
        by_e = Counter(r.e for r in here if not r.unramified)
        ram = ", ".join(f"e={e}: {c}" for e, c in sorted(by_e.items())) or "none"
        print(f"  degree {d}: {len(here)} records, {unr} unramified (expected {unramified_count(K.p, d)}); ramified {ram}")
    part = ramification_partition(recs)
    print("  partition by r: " + ", ".join(f"r={r}: {len(v)}" for r, v in part.items()))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--a", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--max-degree", type=int, default=4)
    args = ap.parse_args()
    for p in args.p:
        for a in args.a:
            table(PFieldParams(p, a), args.max_degree)


if __name__ == "__main__":
    main()
