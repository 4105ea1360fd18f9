"""Oracle checks over one group or a sweep of groups.

Shared by `cli verify`, the acceptance tests and the scripts.  Every check
is computed along two independent routes (e.g. Phi-orbits from the
character side versus Berman's count from conjugacy classes) and only
compared here.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import modcheck
from .char_orbits import PhiOrbit, enumerate_pairs, phi_orbits
from .errors import ResourceError, TooLarge
from .ffield import MAX_DEGREE, tilde_degree
from .matrep import MatrixRep
from .rep_builder import build_pi, decompose_pi_over_tilde
from .twisted_group import TwistedGroup, make_group, p_regular_class_orbits, p_regular_classes


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerifyConfig:
    """Which checks to run and how far to push them."""

    build: bool = True
    descent_max_degree: int = 8
    endo_max_degree: int = 16
    census_m: int | None = None
    certify_beyond_exhaustive: bool = True


@dataclass
class GroupReport:
    G: TwistedGroup
    orbits: list[PhiOrbit]
    checks: list[Check]
    pis: dict[tuple[int, int, int], MatrixRep] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def sweep_parameters(bound: int, primes=(2, 3), exponents=(1, 2)) -> list[tuple[int, int, int, int]]:
    """All (p, a, e, f) with e f <= bound and e | q^f - 1."""
    out = []
    for p in primes:
        for a in exponents:
            q = p**a
            for e in range(1, bound + 1):
                for f in range(1, bound // e + 1):
                    if (q**f - 1) % e == 0:
                        out.append((p, a, e, f))
    return out


def trace_fingerprint(rep: MatrixRep) -> tuple[int, ...]:
    """Traces of rep(t^i sigma^j) over all group elements.

    Distinct F_p-irreducibles whose scalar extensions are multiplicity-free
    sums of absolutely irreducibles have distinct trace functions, so
    different fingerprints prove non-isomorphism.
    """
    G, p = rep.group, rep.base.p
    T, S = rep.np_gens
    n = rep.degree
    out = []
    Tpow = np.eye(n, dtype=np.int64)
    tp = []
    for _ in range(G.e):
        tp.append(Tpow)
        Tpow = (Tpow @ T) % p
    Spow = np.eye(n, dtype=np.int64)
    for _ in range(G.f):
        for A in tp:
            out.append(int(np.einsum("ij,ji->", A, Spow) % p))
        Spow = (Spow @ S) % p
    return tuple(out)


def _irreducibility(pi: MatrixRep, cfg: VerifyConfig) -> tuple[bool | None, str]:
    try:
        return modcheck.is_irreducible(pi), "exhaustive"
    except TooLarge:
        pass
    if not cfg.certify_beyond_exhaustive:
        return None, "skipped"
    res = modcheck.meataxe(pi)
    return res.irreducible, "certificate"


def verify_group(G: TwistedGroup, cfg: VerifyConfig | None = None) -> GroupReport:
    cfg = cfg or VerifyConfig()
    orbits = phi_orbits(G)
    pairs = enumerate_pairs(G)
    checks: list[Check] = []
    stats = {"orbits": len(orbits), "built": 0, "exhaustive": 0, "certificate": 0, "descent": 0, "census": 0}

    berman = p_regular_class_orbits(G)
    checks.append(Check("berman_count", len(orbits) == berman, f"phi-orbits {len(orbits)}, class orbits {berman}"))
    nreg = len(p_regular_classes(G))
    checks.append(Check("pairs_vs_p_regular_classes", len(pairs) == nreg, f"pairs {len(pairs)}, p-regular classes {nreg}"))
    if G.f % G.p:
        ssq = sum(pc.orbit.s**2 for pc in pairs)
        checks.append(Check("sum_s_squared", ssq == G.e * G.f, f"sum s^2 = {ssq}, e f = {G.e * G.f}"))
    bad_size = [o.canonical.key for o in orbits if o.size != o.defdeg]
    checks.append(Check("orbit_size_is_defdeg", not bad_size, f"mismatches {bad_size}" if bad_size else ""))

    report = GroupReport(G, orbits, checks, stats=stats)
    if not cfg.build:
        return report

    failures: dict[str, list] = {"degree": [], "irreducible": [], "descent": [], "endo": [], "census": [], "build": []}
    tilde_ok = tilde_degree(G.p, G.a, G.f) <= MAX_DEGREE
    for orb in orbits:
        key = orb.canonical.key
        try:
            pi = build_pi(G, orb)
        except ResourceError as exc:
            failures["build"].append((key, str(exc)))
            continue
        stats["built"] += 1
        report.pis[key] = pi
        if pi.degree != math.lcm(orb.orbit.r, orb.orbit.s * orb.lam.w):
            failures["degree"].append(key)
        irr, how = _irreducibility(pi, cfg)
        if how in stats:
            stats[how] += 1
        if irr is False:
            failures["irreducible"].append(key)
        if pi.degree <= cfg.descent_max_degree and tilde_ok:
            stats["descent"] += 1
            if decompose_pi_over_tilde(pi, G) != list(orb.members):
                failures["descent"].append(key)
        if pi.degree <= cfg.endo_max_degree and irr:
            if len(modcheck.hom_space(pi, pi)) != orb.defdeg:
                failures["endo"].append(key)
        if cfg.census_m and pi.base.p ** (pi.degree * cfg.census_m) <= modcheck.EXHAUSTIVE_LIMIT:
            stats["census"] += 1
            qE = G.p**orb.defdeg
            expected = (qE**cfg.census_m - 1) // (qE - 1)
            got = modcheck.submodule_census(pi, cfg.census_m)
            if got != expected:
                failures["census"].append((key, got, expected))

    checks.append(Check("degree_formula", not failures["degree"], _fmt(failures["degree"])))
    checks.append(
        Check(
            "irreducible",
            not failures["irreducible"],
            f"{stats['exhaustive']} exhaustive, {stats['certificate']} by certificate" + _fmt(failures["irreducible"], "; "),
        )
    )
    checks.append(Check("non_isomorphic", *_pairwise_distinct(report.pis)))
    if stats["descent"]:
        checks.append(Check("descent_identity", not failures["descent"], f"{stats['descent']} orbits" + _fmt(failures["descent"], "; ")))
    checks.append(Check("endomorphism_field", not failures["endo"], _fmt(failures["endo"])))
    if cfg.census_m:
        checks.append(Check("census", not failures["census"], f"{stats['census']} modules" + _fmt(failures["census"], "; ")))
    if failures["build"]:
        checks.append(Check("built_all", True, f"not built (resource bounds): {len(failures['build'])}"))
    return report


def _fmt(items, prefix: str = "") -> str:
    return f"{prefix}failures: {items}" if items else ""


def _pairwise_distinct(pis: dict) -> tuple[bool, str]:
    buckets: dict[tuple, list] = {}
    for key, pi in pis.items():
        buckets.setdefault((pi.degree, trace_fingerprint(pi)), []).append(key)
    hom_checked = 0
    clashes = []
    for keys in buckets.values():
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                hom_checked += 1
                if modcheck.hom_space(pis[keys[i]], pis[keys[j]]):
                    clashes.append((keys[i], keys[j]))
    detail = f"{len(pis)} modules, {hom_checked} pairs needed a hom-space check"
    if clashes:
        detail += f"; isomorphic pairs: {clashes}"
    return not clashes, detail


@dataclass
class SweepReport:
    groups: int
    orbits: int
    failures: list[tuple[tuple[int, int, int, int], Check]]
    stats: dict[str, int]
    seconds: float

    @property
    def passed(self) -> bool:
        return not self.failures


def run_sweep(bound: int, primes=(2, 3), exponents=(1, 2), cfg: VerifyConfig | None = None) -> SweepReport:
    t0 = time.perf_counter()
    failures = []
    totals: dict[str, int] = {}
    groups = 0
    for params in sweep_parameters(bound, primes, exponents):
        G = make_group(*params)
        rep = verify_group(G, cfg)
        groups += 1
        for k, v in rep.stats.items():
            totals[k] = totals.get(k, 0) + v
        for c in rep.checks:
            if not c.passed:
                failures.append((params, c))
    return SweepReport(groups, totals.get("orbits", 0), failures, totals, time.perf_counter() - t0)
