"""Command-line interface.

    littlegroups classify-group  --p 2 --a 1 --e 3 --f 2 [--format json|csv] [--emit-matrices]
    littlegroups classify-galois --p 2 --a 1 --max-degree 2 [--format json|csv]
    littlegroups verify          --p 2 --a 1 --e 3 --f 2 [--census-m 2]
    littlegroups verify          --sweep 100 [--p 2] [--a 1]
    littlegroups examples

Output.  JSON is one object with keys "params", "records" and "checks".
Each record carries the fields of RECORD_FIELDS in that order; CSV uses
the same columns, with empty cells for missing values.  Lambda is written
as (lambda_order, lambda_log): lambda = zeta^log for the normalized
root of unity zeta of that order (see rep_builder).

With --emit-matrices (JSON only) each record also gets "matrices": the
generators of pi over F_p as row-major lists of integers mod p, with
"gen_t" the image of the generator of T and "gen_s" the image of sigma.
The matrix field is described once in params["matrix_field"].

Exit codes: 0 success, 1 verification failure, 2 parameter error,
3 resource bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, fields

from .char_orbits import PhiOrbit, enumerate_pairs, phi_orbits
from .errors import ConsistencyError, ParameterError, ResourceError
from .modcheck import endomorphism_field
from .rep_builder import build_pi, image_order
from .tame_galois import (
    GaloisRepRecord,
    PFieldParams,
    classify_galois_reps,
    ramification_partition,
    unramified_count,
)
from .twisted_group import identify_small_group, make_group, p_regular_class_orbits, p_regular_classes, twist_by_rep
from .verification import VerifyConfig, run_sweep, verify_group

EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass(frozen=True)
class OutputRecord:
    p: int
    a: int
    e: int
    f: int
    char_rep: int
    s: int
    d: int
    r: int
    lambda_order: int
    lambda_log: int
    w: int
    degree: int
    defdeg: int
    unramified: bool | None = None
    label_r: int | None = None
    n: int | None = None

    def sort_key(self) -> tuple:
        return (self.degree, self.d, self.char_rep, self.lambda_order, self.lambda_log)


RECORD_FIELDS = tuple(f.name for f in fields(OutputRecord))


def record_from_orbit(p: int, a: int, e: int, f: int, orb: PhiOrbit, **extra) -> OutputRecord:
    o, lam = orb.orbit, orb.lam
    return OutputRecord(p, a, e, f, o.rep_c, o.s, o.d, o.r, lam.order, lam.log, lam.w, orb.degree, orb.defdeg, **extra)


def record_from_galois(K: PFieldParams, rec: GaloisRepRecord, e_n: int, f_n: int) -> OutputRecord:
    return record_from_orbit(K.p, K.a, e_n, f_n, rec.orbit, unramified=rec.unramified, label_r=rec.label_r, n=rec.level)


# ---------------------------------------------------------------------------
# serialization


def records_to_json(params: dict, records: list[OutputRecord], checks: list[dict], extra: dict | None = None) -> str:
    recs = []
    for i, r in enumerate(records):
        d = {k: getattr(r, k) for k in RECORD_FIELDS}
        if extra and i in extra:
            d.update(extra[i])
        recs.append(d)
    return json.dumps({"params": params, "records": recs, "checks": checks}, indent=2) + "\n"


def records_from_json(text: str) -> list[OutputRecord]:
    obj = json.loads(text)
    return [OutputRecord(**{k: rec[k] for k in RECORD_FIELDS}) for rec in obj["records"]]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def records_to_csv(records: list[OutputRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_FIELDS)
    for r in records:
        w.writerow([_cell(getattr(r, k)) for k in RECORD_FIELDS])
    return buf.getvalue()


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name == "unramified":
        return text == "true"
    return int(text)


def records_from_csv(text: str) -> list[OutputRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    header = tuple(rows[0])
    if header != RECORD_FIELDS:
        raise ValueError(f"unexpected CSV header {header}")
    return [OutputRecord(**{k: _parse_cell(k, v) for k, v in zip(header, row)}) for row in rows[1:]]


# ---------------------------------------------------------------------------
# commands


def cmd_classify_group(args, out) -> int:
    p, a, e, f = args.p, args.a, args.e, args.f
    G = make_group(p, a, e, f)
    orbits = phi_orbits(G)
    pairs = enumerate_pairs(G)
    records = sorted((record_from_orbit(p, a, e, f, o) for o in orbits), key=OutputRecord.sort_key)
    berman = p_regular_class_orbits(G)
    checks = [
        {"name": "berman_count", "passed": len(orbits) == berman, "detail": f"{len(orbits)} orbits, {berman} class orbits"},
        {
            "name": "pairs_vs_p_regular_classes",
            "passed": len(pairs) == len(p_regular_classes(G)),
            "detail": f"{len(pairs)} pairs",
        },
    ]
    params = {"p": p, "a": a, "q": p**a, "e": e, "f": f, "order": G.order}
    if args.format == "csv":
        if args.emit_matrices:
            raise ParameterError("--emit-matrices needs --format json")
        out.write(records_to_csv(records))
        return EXIT_OK
    extra = None
    if args.emit_matrices:
        by_key = {o.canonical.key: o for o in orbits}
        extra = {}
        for i, r in enumerate(records):
            pi = build_pi(G, by_key[(r.char_rep, r.lambda_order, r.lambda_log)])
            extra[i] = {"matrices": {"gen_t": [list(row) for row in pi.gen_t], "gen_s": [list(row) for row in pi.gen_s]}}
        params["matrix_field"] = {"p": p, "m": 1, "modulus": [0, 1]}
    out.write(records_to_json(params, records, checks, extra))
    return EXIT_OK


def cmd_classify_galois(args, out, err) -> int:
    K = PFieldParams(args.p, args.a)
    recs = classify_galois_reps(K, args.max_degree)
    from .tame_galois import level_params

    levels = {d: level_params(K, d) for d in range(1, args.max_degree + 1)}
    records = [record_from_galois(K, r, levels[r.level].e_n, levels[r.level].f_n) for r in recs]
    records.sort(key=OutputRecord.sort_key)
    partition = ramification_partition(recs)
    checks = []
    for d in range(1, args.max_degree + 1):
        got = sum(1 for r in recs if r.degree == d and r.unramified)
        want = unramified_count(K.p, d)
        checks.append({"name": f"unramified_count_degree_{d}", "passed": got == want, "detail": f"{got} records, {want} polynomials"})
    summary = {str(label): len(v) for label, v in partition.items()}
    checks.append({"name": "ramification_partition", "passed": K.p != 2 or "1" not in summary, "detail": json.dumps(summary)})
    params = {"p": K.p, "a": K.a, "q": K.q, "max_degree": args.max_degree}
    if args.format == "csv":
        out.write(records_to_csv(records))
        err.write(f"ramification partition (label: count): {summary}\n")
    else:
        out.write(records_to_json(params, records, checks))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    cfg = VerifyConfig(census_m=args.census_m)
    if args.sweep is not None:
        primes = (args.p,) if args.p else (2, 3)
        exps = (args.a,) if args.a else (1, 2)
        rep = run_sweep(args.sweep, primes, exps, cfg)
        out.write(f"sweep e*f <= {args.sweep}, p in {list(primes)}, a in {list(exps)}: {rep.groups} groups, {rep.orbits} orbits\n")
        out.write(f"stats: {json.dumps(rep.stats, sort_keys=True)}\n")
        for params, c in rep.failures:
            out.write(f"FAIL {params} {c.name}: {c.detail}\n")
        out.write("PASS\n" if rep.passed else "FAIL\n")
        return EXIT_OK if rep.passed else EXIT_FAIL
    if None in (args.p, args.a, args.e, args.f):
        raise ParameterError("verify needs --p --a --e --f, or --sweep")
    G = make_group(args.p, args.a, args.e, args.f)
    rep = verify_group(G, cfg)
    for c in rep.checks:
        out.write(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}\n")
    if args.census_m:
        for key, pi in sorted(rep.pis.items()):
            if G.p ** (pi.degree * args.census_m) <= 1 << 20:
                from .modcheck import submodule_census

                out.write(f"census {key} degree {pi.degree}, m = {args.census_m}: {submodule_census(pi, args.census_m)}\n")
    out.write("PASS\n" if rep.passed else "FAIL\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _preset_group(name: str, params, expect_twist: str, suffix: str = "") -> tuple[str, bool]:
    G = make_group(*params)
    orbits = phi_orbits(G)
    degrees = sorted(o.degree for o in orbits)
    top = max(orbits, key=lambda o: o.degree)
    pi = build_pi(G, top)
    twist = identify_small_group(twist_by_rep(pi, G))
    E = endomorphism_field(pi)
    ok = degrees == [1, 2] and twist == expect_twist
    line = f"{name}: degrees {{{', '.join(map(str, degrees))}}}; End(pi) = F_{G.p ** E}; twist = {twist}{suffix}"
    if name == "s3":
        bij = image_order(pi) == G.order == 6
        ok = ok and bij and E == 1
        line = f"{name}: degrees {{1, 2}}; pi: G = GL_2(F_2) ({'bijective' if bij else 'NOT bijective'}); twist = {twist}"
    else:
        ok = ok and E == 2
    return line, ok


def _preset_galois() -> tuple[str, bool]:
    parts = []
    ok = True
    for a, want in ((1, [(1, True, 1, None), (2, True, 1, None), (2, False, 3, 2)]),
                    (2, [(1, True, 1, None), (2, True, 1, None)] + [(2, False, 3, 2)] * 3)):
        recs = classify_galois_reps(PFieldParams(2, a), 2)
        got = [(r.degree, r.unramified, r.e, r.label_r) for r in recs]
        ok = ok and got == want
        unr = sum(1 for r in recs if r.degree == 2 and r.unramified)
        ram = [r for r in recs if r.degree == 2 and not r.unramified]
        parts.append(f"q={2 ** a}: {len(recs)} records, degree 2: {unr} unramified, {len(ram)} ramified (e=3, r=2)")
    return "galois-n2: " + "; ".join(parts), ok


def cmd_examples(out) -> int:
    results = [
        _preset_group("z3", (2, 1, 1, 3), "A4"),
        _preset_group("a3", (2, 2, 3, 1), "A4", ", as before"),
        _preset_group("s3", (2, 1, 3, 2), "S4"),
        _preset_galois(),
    ]
    for line, ok in results:
        out.write(f"{'ok  ' if ok else 'FAIL'} {line}\n")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="littlegroups", description="Irreducible mod-p representations of twisted products.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("classify-group", help="Phi-orbit table of G(p, a, e, f)")
    for name in ("p", "a", "e", "f"):
        g.add_argument(f"--{name}", type=int, required=True)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--emit-matrices", action="store_true")

    gal = sub.add_parser("classify-galois", help="mod-p irreducibles of the tame Galois group")
    gal.add_argument("--p", type=int, required=True)
    gal.add_argument("--a", type=int, default=1)
    gal.add_argument("--max-degree", type=int, required=True)
    gal.add_argument("--format", choices=("json", "csv"), default="json")

    v = sub.add_parser("verify", help="run the oracle checks")
    for name in ("p", "a", "e", "f"):
        v.add_argument(f"--{name}", type=int)
    v.add_argument("--sweep", type=int)
    v.add_argument("--census-m", type=int)

    sub.add_parser("examples", help="worked examples with golden summaries")
    return parser


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classify-group":
            return cmd_classify_group(args, out)
        if args.command == "classify-galois":
            return cmd_classify_galois(args, out, err)
        if args.command == "verify":
            return cmd_verify(args, out)
        return cmd_examples(out)
    except ParameterError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARAM
    except ResourceError as exc:
        err.write(f"resource bound: {exc}\n")
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        err.write(f"consistency failure: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
