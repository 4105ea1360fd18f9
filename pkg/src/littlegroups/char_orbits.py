"""Characters of T, their Sigma-orbits, admissible lambdas and Phi-orbits.

A character chi of T = Z/e is a residue c mod e (chi(t) = zeta_e^{c t}).
Sigma acts by c -> q c and the absolute Frobenius by c -> p c.  A lambda is
stored as (order, log): lambda = zeta_order^log for the fixed root of unity
chosen when matrices are built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import divisors

from .errors import GroupTooLarge
from .ffield import int_order, prime_to_p
from .twisted_group import CLASS_LIMIT, TwistedGroup

ORBIT_LIMIT = 10**5


@dataclass(frozen=True, order=True)
class CharOrbit:
    rep_c: int
    members: tuple[int, ...]
    d: int
    r: int
    s: int


@dataclass(frozen=True, order=True)
class Lambda:
    order: int
    log: int
    w: int


@dataclass(frozen=True, order=True)
class PairClass:
    orbit: CharOrbit
    lam: Lambda

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.orbit.rep_c, self.lam.order, self.lam.log)


@dataclass(frozen=True)
class PhiOrbit:
    canonical: PairClass
    members: tuple[PairClass, ...]
    size: int
    degree: int
    defdeg: int

    @property
    def orbit(self) -> CharOrbit:
        return self.canonical.orbit

    @property
    def lam(self) -> Lambda:
        return self.canonical.lam


# ---------------------------------------------------------------------------


def char_invariants(c: int, G: TwistedGroup) -> tuple[int, int, int]:
    """(d, r, s): order of chi and the orders of p and q modulo d."""
    d = G.e // math.gcd(G.e, c % G.e) if G.e > 1 else 1
    return d, int_order(G.p, d), int_order(G.q, d)


def char_orbit_of(c: int, G: TwistedGroup) -> CharOrbit:
    e = G.e
    c %= e
    members = {c}
    x = c * G.q % e
    while x != c:
        members.add(x)
        x = x * G.q % e
    d, r, s = char_invariants(c, G)
    ms = tuple(sorted(members))
    return CharOrbit(ms[0], ms, d, r, s)


def enumerate_character_orbits(G: TwistedGroup) -> list[CharOrbit]:
    if G.e > ORBIT_LIMIT:
        raise GroupTooLarge(f"e = {G.e} exceeds {ORBIT_LIMIT}")
    seen = [False] * G.e
    out = []
    for c in range(G.e):
        if not seen[c]:
            orb = char_orbit_of(c, G)
            for x in orb.members:
                seen[x] = True
            out.append(orb)
    return out


def lambda_bound(G: TwistedGroup, orbit: CharOrbit) -> int:
    """Prime-to-p part of f/s: lambda ranges over the roots of unity of this order."""
    return prime_to_p(G.f // orbit.s, G.p)


def _lambdas_dividing(n: int, p: int) -> list[Lambda]:
    out = []
    for dl in divisors(n):
        w = int_order(p, dl)
        for log in range(dl):
            if math.gcd(log, dl) == 1 or dl == 1:
                out.append(Lambda(dl, log % dl, w))
    return sorted(out)


def enumerate_lambda(G: TwistedGroup, orbit: CharOrbit) -> list[Lambda]:
    return _lambdas_dividing(lambda_bound(G, orbit), G.p)


def enumerate_pairs(G: TwistedGroup) -> list[PairClass]:
    if G.order > CLASS_LIMIT:
        raise GroupTooLarge(f"|G| = {G.order} exceeds {CLASS_LIMIT}")
    return [PairClass(o, lam) for o in enumerate_character_orbits(G) for lam in enumerate_lambda(G, o)]


# ---------------------------------------------------------------------------
# Frobenius action


def frobenius_pair(pair: PairClass, G: TwistedGroup) -> PairClass:
    """(chi-bar, lambda) -> (chi-bar^p, lambda^p)."""
    orbit = char_orbit_of(pair.orbit.rep_c * G.p, G)
    lam = pair.lam
    return PairClass(orbit, Lambda(lam.order, lam.log * G.p % lam.order, lam.w))


def frobenius_period(pair: PairClass, G: TwistedGroup) -> list[PairClass]:
    """The Phi-orbit of a pair, in the order reached by repeated p-powers."""
    seen = [pair]
    cur = frobenius_pair(pair, G)
    while cur != pair:
        seen.append(cur)
        cur = frobenius_pair(cur, G)
    return seen


def orbit_degree(r: int, s: int, w: int) -> int:
    return math.lcm(r, s * w)


def orbit_defdeg(r: int, s: int, w: int) -> int:
    if r % s:
        raise ArithmeticError(f"s = {s} does not divide r = {r}")
    return math.lcm(r // s, w)


def _make_phi_orbit(pair: PairClass, G: TwistedGroup) -> PhiOrbit:
    members = frobenius_period(pair, G)
    canonical = min(members, key=lambda pc: pc.key)
    o, lam = canonical.orbit, canonical.lam
    return PhiOrbit(
        canonical=canonical,
        members=tuple(sorted(members, key=lambda pc: pc.key)),
        size=len(members),
        degree=orbit_degree(o.r, o.s, lam.w),
        defdeg=orbit_defdeg(o.r, o.s, lam.w),
    )


def phi_orbit_of(pair: PairClass, G: TwistedGroup) -> PhiOrbit:
    return _make_phi_orbit(pair, G)


def phi_orbits(G: TwistedGroup, degree: int | None = None) -> list[PhiOrbit]:
    """Phi-orbits of pairs, sorted by canonical key.

    With `degree` given, only orbits of exactly that degree are produced, and
    the enumeration is restricted up front (r | degree, w | degree / s), so it
    also works for groups too large for the full pair list.
    """
    if degree is None:
        pairs = enumerate_pairs(G)
    else:
        pairs = _pairs_of_degree(G, degree)
    seen: set[tuple[int, int, int]] = set()
    out = []
    for pc in pairs:
        if pc.key in seen:
            continue
        orb = _make_phi_orbit(pc, G)
        for m in orb.members:
            seen.add(m.key)
        if degree is None or orb.degree == degree:
            out.append(orb)
    out.sort(key=lambda o: o.canonical.key)
    return out


def _pairs_of_degree(G: TwistedGroup, degree: int) -> list[PairClass]:
    if G.e > ORBIT_LIMIT:
        raise GroupTooLarge(f"e = {G.e} exceeds {ORBIT_LIMIT}")
    step = G.e // math.gcd(G.e, G.p**degree - 1)
    seen: set[int] = set()
    out = []
    for c in range(0, G.e, step):
        if c in seen:
            continue
        orb = char_orbit_of(c, G)
        seen.update(orb.members)
        if degree % orb.r:
            continue
        bound = math.gcd(lambda_bound(G, orb), G.p ** (degree // orb.s) - 1)
        for lam in _lambdas_dividing(bound, G.p):
            if orbit_degree(orb.r, orb.s, lam.w) == degree:
                out.append(PairClass(orb, lam))
    return out


def pair_count(G: TwistedGroup) -> int:
    return len(enumerate_pairs(G))


def squared_degree_sum(G: TwistedGroup) -> int:
    return sum(pc.orbit.s**2 for pc in enumerate_pairs(G))
