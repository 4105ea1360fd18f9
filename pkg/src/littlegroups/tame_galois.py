"""Finite quotients of the tame Galois group of a p-field and their mod-p irreducibles.

Only the residue data (p, a) of the base field K enters.  At level n the
inertia quotient is cyclic of order e_n = p^n - 1, the residue degree s_n
of the field containing the e_n-th roots of unity is the order of q mod e_n,
and the Kummer extension L_n of K_n has residue degree f_n over k, the
least multiple of s_n with e_n (q^s_n - 1) | q^f_n - 1.  The Galois group
G_n = Gal(L_n | K) is the twisted product of Z/e_n and Z/f_n.

Every irreducible F_p-representation of degree d of the tame Galois group
factors through G_d, so degree-d representations are the degree-d Phi-orbits
of G_d.  They are enumerated there and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import divisors
from sympy.functions.combinatorial.numbers import mobius

from .char_orbits import Lambda, PairClass, PhiOrbit, char_orbit_of, phi_orbit_of, phi_orbits
from .errors import LevelsIncompatible, NonPrime, ParameterError, ResourceError, TooLarge
from .ffield import int_order
from .matrep import pullback
from .twisted_group import TwistedGroup, make_group

LEVEL_LIMIT = 1 << 20
MAX_GALOIS_DEGREE = 6


@dataclass(frozen=True)
class PFieldParams:
    """Residue characteristic p and residue degree a of K (so q = p^a)."""

    p: int
    a: int

    def __post_init__(self):
        from sympy import isprime

        if not isprime(self.p):
            raise NonPrime(f"p = {self.p} is not prime")
        if self.a < 1:
            raise ParameterError(f"a = {self.a} must be positive")

    @property
    def q(self) -> int:
        return self.p**self.a


@dataclass(frozen=True)
class LevelParams:
    n: int
    q: int
    e_n: int
    s_n: int
    f_n: int

    @property
    def kummer_modulus(self) -> int:
        return self.e_n * (self.q**self.s_n - 1)


@dataclass(frozen=True)
class GaloisRepRecord:
    degree: int
    level: int
    unramified: bool
    e: int
    label_r: int | None
    orbit: PhiOrbit
    defdeg: int

    def sort_key(self) -> tuple:
        return (self.degree, self.e, self.label_r or 0, self.orbit.canonical.key)


def level_params(K: PFieldParams, n: int) -> LevelParams:
    if n < 1:
        raise ParameterError(f"level n = {n} must be positive")
    if K.p**n > LEVEL_LIMIT:
        raise TooLarge(f"p^n = {K.p ** n} exceeds {LEVEL_LIMIT}")
    q = K.q
    e_n = K.p**n - 1
    s_n = int_order(q, e_n)
    M = e_n * (q**s_n - 1)
    # ord(q mod M) is a multiple of s_n because e_n | M
    f_n = int_order(q, M)
    lp = LevelParams(n, q, e_n, s_n, f_n)
    _check_level(lp)
    return lp


def _check_level(lp: LevelParams) -> None:
    q, M = lp.q, lp.kummer_modulus
    problems = []
    if lp.f_n % lp.s_n:
        problems.append("s_n does not divide f_n")
    if lp.f_n % lp.e_n:
        problems.append("e_n does not divide f_n")
    if (pow(q, lp.f_n, M) - 1) % M:
        problems.append("e_n (q^s_n - 1) does not divide q^f_n - 1")
    if problems:
        raise LevelsIncompatible(f"level {lp.n}: " + "; ".join(problems))


def minimal_f_by_scan(q: int, e_n: int, s_n: int) -> int:
    """Oracle for f_n: scan multiples of s_n."""
    M = e_n * (q**s_n - 1)
    m = s_n
    while pow(q, m, M) != 1 % M:
        m += s_n
    return m


def galois_group_at_level(K: PFieldParams, n: int) -> TwistedGroup:
    lp = level_params(K, n)
    return make_group(K.p, K.a, lp.e_n, lp.f_n)


def classify_galois_reps(K: PFieldParams, N: int) -> list[GaloisRepRecord]:
    """All irreducible F_p-representations of degree <= N, one record each."""
    if N < 1:
        raise ParameterError(f"max degree {N} must be positive")
    if N > MAX_GALOIS_DEGREE:
        raise TooLarge(f"max degree {N} exceeds {MAX_GALOIS_DEGREE}")
    records = []
    for d in range(1, N + 1):
        G = galois_group_at_level(K, d)
        for orb in phi_orbits(G, degree=d):
            e = orb.orbit.d
            ramified = e != 1
            records.append(
                GaloisRepRecord(
                    degree=d,
                    level=d,
                    unramified=not ramified,
                    e=e,
                    label_r=orb.orbit.r if ramified else None,
                    orbit=orb,
                    defdeg=orb.defdeg,
                )
            )
    records.sort(key=GaloisRepRecord.sort_key)
    return records


def ramification_partition(records: list[GaloisRepRecord]) -> dict[int, list[GaloisRepRecord]]:
    """Ramified records grouped by r = ord(p mod e); unramified ones are left out."""
    out: dict[int, list[GaloisRepRecord]] = {}
    for rec in records:
        if rec.unramified:
            continue
        if rec.degree % rec.label_r:
            raise LevelsIncompatible(f"label {rec.label_r} does not divide degree {rec.degree}")
        out.setdefault(rec.label_r, []).append(rec)
    return dict(sorted(out.items()))


def unramified_count(p: int, d: int) -> int:
    """Monic irreducible polynomials of degree d over F_p with nonzero constant term."""
    total = sum(int(mobius(d // j)) * (p**j - 1) for j in divisors(d))
    return total // d


# ---------------------------------------------------------------------------
# compatibility between levels


@dataclass(frozen=True)
class CompatibilityEntry:
    key: tuple[int, int, int]
    lifted_key: tuple[int, int, int]
    degree: int
    isomorphic: bool | None
    note: str = ""


@dataclass(frozen=True)
class CompatibilityReport:
    n: int
    n2: int
    entries: tuple[CompatibilityEntry, ...]

    @property
    def passed(self) -> bool:
        return all(en.isomorphic is not False for en in self.entries)

    @property
    def checked(self) -> int:
        return sum(1 for en in self.entries if en.isomorphic is not None)


def lift_pair(pair: PairClass, G: TwistedGroup, G2: TwistedGroup) -> PairClass:
    """The same character pulled back along Z/e2 -> Z/e, with the same lambda."""
    c2 = pair.orbit.rep_c * (G2.e // G.e)
    lam = pair.lam
    return PairClass(char_orbit_of(c2, G2), Lambda(lam.order, lam.log, lam.w))


def quotient_compatibility_check(K: PFieldParams, n: int, n2: int, max_degree: int | None = None) -> CompatibilityReport:
    """pi' built at level n2 agrees with pi at level n composed with the projection."""
    from .modcheck import are_isomorphic
    from .rep_builder import build_pi

    if n2 % n:
        raise LevelsIncompatible(f"{n} does not divide {n2}")
    lp, lp2 = level_params(K, n), level_params(K, n2)
    if lp2.e_n % lp.e_n or lp2.f_n % lp.f_n:
        raise LevelsIncompatible(f"level {n} does not embed in level {n2}")
    G = make_group(K.p, K.a, lp.e_n, lp.f_n)
    G2 = make_group(K.p, K.a, lp2.e_n, lp2.f_n)
    entries = []
    for orb in phi_orbits(G):
        orb2 = phi_orbit_of(lift_pair(orb.canonical, G, G2), G2)
        key2 = orb2.canonical.key
        if orb2.degree != orb.degree:
            entries.append(CompatibilityEntry(orb.canonical.key, key2, orb.degree, False, "degree changed"))
            continue
        if max_degree is not None and orb.degree > max_degree:
            entries.append(CompatibilityEntry(orb.canonical.key, key2, orb.degree, None, "skipped: degree bound"))
            continue
        try:
            pi = build_pi(G, orb)
            pi2 = build_pi(G2, orb2)
        except ResourceError as exc:
            entries.append(CompatibilityEntry(orb.canonical.key, key2, orb.degree, None, f"skipped: {exc}"))
            continue
        ok = are_isomorphic(pi2, pullback(pi, G2))
        entries.append(CompatibilityEntry(orb.canonical.key, key2, orb.degree, ok))
    return CompatibilityReport(n, n2, tuple(entries))
