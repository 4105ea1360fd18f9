"""The groups G = T x_q Sigma and small finite groups given by tables.

T is cyclic of order e, written additively as Z/e; Sigma is cyclic of order f
generated by sigma, acting on T by t -> q t.  Elements are pairs (t, i) with

    (t, i) (u, j) = (t + q^i u mod e, i + j mod f).

The generator of T is (1, 0) and sigma is (0, 1).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np
from sympy import factorint, isprime

from .errors import GroupTooLarge, IncompatibleParameters, NonPrime, NotAHomomorphism, TooLarge

CLASS_LIMIT = 10**4
TABLE_LIMIT = 200


@dataclass(frozen=True, order=True)
class GroupElem:
    t: int
    i: int


@dataclass(frozen=True)
class TwistedGroup:
    p: int
    a: int
    e: int
    f: int

    @property
    def q(self) -> int:
        return self.p**self.a

    @property
    def qe(self) -> int:
        """q reduced mod e."""
        return self.q % self.e

    @property
    def order(self) -> int:
        return self.e * self.f

    @cached_property
    def qpow(self) -> tuple[int, ...]:
        """q^i mod e for 0 <= i < f (q^f = 1 mod e, so exponents wrap mod f)."""
        out = [1 % self.e]
        for _ in range(self.f - 1):
            out.append(out[-1] * self.q % self.e)
        return tuple(out)

    @property
    def is_commutative(self) -> bool:
        return self.qe == 1 % self.e

    @property
    def identity(self) -> GroupElem:
        return GroupElem(0, 0)

    def elem(self, t: int, i: int) -> GroupElem:
        return GroupElem(t % self.e, i % self.f)

    def elements(self) -> Iterator[GroupElem]:
        for i in range(self.f):
            for t in range(self.e):
                yield GroupElem(t, i)

    def index(self, g: GroupElem) -> int:
        return g.i * self.e + g.t

    def mul(self, g: GroupElem, h: GroupElem) -> GroupElem:
        return GroupElem((g.t + self.qpow[g.i] * h.t) % self.e, (g.i + h.i) % self.f)

    def inverse(self, g: GroupElem) -> GroupElem:
        j = (-g.i) % self.f
        return GroupElem((-self.qpow[j] * g.t) % self.e, j)

    def power(self, g: GroupElem, k: int) -> GroupElem:
        if k < 0:
            g, k = self.inverse(g), -k
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, g)
            k >>= 1
            if k:
                g = self.mul(g, g)
        return result

    def conjugate(self, g: GroupElem, by: GroupElem) -> GroupElem:
        """by * g * by^{-1}."""
        return self.mul(self.mul(by, g), self.inverse(by))

    def element_order(self, g: GroupElem) -> int:
        k0 = self.f // math.gcd(g.i, self.f)
        # g^k0 lies in T: t (1 + q^i + ... + q^{i(k0-1)})
        step = self.qpow[(g.i) % self.f]
        acc, term = 0, 1 % self.e
        for _ in range(k0):
            acc = (acc + term) % self.e
            term = term * step % self.e
        tk = g.t * acc % self.e
        return k0 * (self.e // math.gcd(self.e, tk))


def make_group(p: int, a: int, e: int, f: int) -> TwistedGroup:
    if not isprime(p):
        raise NonPrime(f"p = {p} is not prime")
    if a < 1 or e < 1 or f < 1:
        raise IncompatibleParameters("a, e and f must be positive")
    q = p**a
    if pow(q, f, e) != 1 % e:
        raise IncompatibleParameters(
            f"e = {e} does not divide q^f - 1 = {q}^{f} - 1 (q = p^a = {p}^{a})"
        )
    G = TwistedGroup(p, a, e, f)
    assert math.gcd(e, p) == 1
    return G


def group_law(g: GroupElem, h: GroupElem, G: TwistedGroup) -> GroupElem:
    return G.mul(g, h)


# ---------------------------------------------------------------------------
# conjugacy


def _check_size(G: TwistedGroup):
    if G.order > CLASS_LIMIT:
        raise GroupTooLarge(f"|G| = {G.order} exceeds {CLASS_LIMIT}")


def conjugacy_classes(G: TwistedGroup) -> list[tuple[GroupElem, ...]]:
    """Classes as sorted tuples, ordered by their smallest element.

    Conjugation by sigma sends (t, i) to (q t, i) and conjugation by the
    generator of T sends (t, i) to (t + 1 - q^i, i); these two moves generate
    every conjugation.
    """
    _check_size(G)
    e = G.e
    seen = [[False] * e for _ in range(G.f)]
    classes = []
    for i in range(G.f):
        shift = (1 - G.qpow[i]) % e
        for t0 in range(e):
            if seen[i][t0]:
                continue
            seen[i][t0] = True
            stack = [t0]
            members = [t0]
            while stack:
                t = stack.pop()
                for u in (G.q * t % e, (t + shift) % e):
                    if not seen[i][u]:
                        seen[i][u] = True
                        members.append(u)
                        stack.append(u)
            classes.append(tuple(sorted(GroupElem(t, i) for t in members)))
    classes.sort(key=lambda c: (c[0].i, c[0].t))
    return classes


def _class_index(G: TwistedGroup, classes) -> dict[GroupElem, int]:
    return {g: k for k, cl in enumerate(classes) for g in cl}


def p_regular_classes(G: TwistedGroup) -> list[tuple[GroupElem, ...]]:
    return [cl for cl in conjugacy_classes(G) if G.element_order(cl[0]) % G.p]


def p_regular_class_orbits(G: TwistedGroup) -> int:
    """Number of orbits of g -> g^p on p-regular classes (Berman's count)."""
    classes = conjugacy_classes(G)
    where = _class_index(G, classes)
    regular = [k for k, cl in enumerate(classes) if G.element_order(cl[0]) % G.p]
    image = {k: where[G.power(classes[k][0], G.p)] for k in regular}
    seen: set[int] = set()
    count = 0
    for k in regular:
        if k in seen:
            continue
        count += 1
        while k not in seen:
            seen.add(k)
            k = image[k]
    return count


# ---------------------------------------------------------------------------
# groups given by a multiplication table


@dataclass(frozen=True)
class FiniteGroupTable:
    order: int
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = field(init=False)

    def __post_init__(self):
        ident = next(
            (x for x in range(self.order) if all(self.table[x][y] == y for y in range(self.order))),
            None,
        )
        if ident is None:
            raise ValueError("table has no identity")
        object.__setattr__(self, "identity", ident)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        out = []
        for x in range(self.order):
            row = self.table[x]
            out.append(next(y for y in range(self.order) if row[y] == self.identity))
        return tuple(out)

    def verify(self) -> bool:
        """Exhaustive associativity, identity and inverse checks."""
        n, T = self.order, self.table
        for row in T:
            if sorted(row) != list(range(n)):
                return False
        for x in range(n):
            Tx = T[x]
            for y in range(n):
                xy = Tx[y]
                Ty = T[y]
                Txy = T[xy]
                for z in range(n):
                    if Txy[z] != Tx[Ty[z]]:
                        return False
        return all(T[x][self.inverses[x]] == self.identity for x in range(n))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in range(self.order):
            k, y = 1, x
            while y != self.identity:
                y = self.table[y][x]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        T = self.table
        return all(T[x][y] == T[y][x] for x in range(self.order) for y in range(x))

    def class_count(self) -> int:
        n, T, inv = self.order, self.table, self.inverses
        seen = [False] * n
        count = 0
        for x in range(n):
            if seen[x]:
                continue
            count += 1
            for g in range(n):
                seen[T[T[g][x]][inv[g]]] = True
        return count

    def generated(self, gens) -> frozenset[int]:
        """Subgroup generated by gens (closure under multiplication)."""
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def derived_subgroup(self, sub: frozenset[int] | None = None) -> frozenset[int]:
        T, inv = self.table, self.inverses
        members = range(self.order) if sub is None else sorted(sub)
        comms = {T[T[x][y]][T[inv[x]][inv[y]]] for x in members for y in members}
        return self.generated(comms)

    def derived_series_orders(self) -> tuple[int, ...]:
        sizes = [self.order]
        cur = None
        while True:
            nxt = self.derived_subgroup(cur)
            if len(nxt) == sizes[-1]:
                break
            sizes.append(len(nxt))
            cur = nxt
        return tuple(sizes)


def group_table(G: TwistedGroup) -> FiniteGroupTable:
    if G.order > TABLE_LIMIT:
        raise TooLarge(f"|G| = {G.order} exceeds {TABLE_LIMIT}")
    elems = list(G.elements())
    # index (i, t) -> i e + t; product of (t, i) and (u, j) is (t + q^i u, i + j)
    t = np.array([g.t for g in elems])
    i = np.array([g.i for g in elems])
    qp = np.array(G.qpow)
    prod_t = (t[:, None] + qp[i][:, None] * t[None, :]) % G.e
    prod_i = (i[:, None] + i[None, :]) % G.f
    table = tuple(map(tuple, (prod_i * G.e + prod_t).tolist()))
    return FiniteGroupTable(G.order, tuple(f"({g.t},{g.i})" for g in elems), table)


def _small_mat_mul(A, B, p):
    return tuple(
        tuple(sum(A[r][k] * B[k][c] for k in range(len(B))) % p for c in range(len(B[0])))
        for r in range(len(A))
    )


def _small_mat_pow(A, k, p):
    n = len(A)
    out = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for _ in range(k):
        out = _small_mat_mul(out, A, p)
    return out


def rep_matrices(pi, G: TwistedGroup) -> dict[GroupElem, tuple]:
    """pi(t, i) = gen_t^t gen_s^i for every element of G (prime base field only)."""
    p = pi.base.p
    Ts = [_small_mat_pow(pi.gen_t, 0, p)]
    for _ in range(G.e - 1):
        Ts.append(_small_mat_mul(Ts[-1], pi.gen_t, p))
    Ss = [_small_mat_pow(pi.gen_s, 0, p)]
    for _ in range(G.f - 1):
        Ss.append(_small_mat_mul(Ss[-1], pi.gen_s, p))
    return {g: _small_mat_mul(Ts[g.t], Ss[g.i], p) for g in G.elements()}


def is_homomorphism(pi, G: TwistedGroup) -> bool:
    mats = rep_matrices(pi, G)
    p = pi.base.p
    for g in G.elements():
        for h in G.elements():
            if _small_mat_mul(mats[g], mats[h], p) != mats[G.mul(g, h)]:
                return False
    return True


def twist_by_rep(pi, G: TwistedGroup) -> FiniteGroupTable:
    """The group F_p^d x_pi G with (v, g)(w, h) = (v + pi(g) w, g h)."""
    if pi.base.m != 1:
        raise ValueError("twisting needs a representation over the prime field")
    p, d = pi.base.p, pi.degree
    nv = p**d
    if nv * G.order > TABLE_LIMIT:
        raise TooLarge(f"p^d |G| = {nv * G.order} exceeds {TABLE_LIMIT}")
    if not is_homomorphism(pi, G):
        raise NotAHomomorphism("matrices do not define a representation of G")
    mats = rep_matrices(pi, G)

    def vec(code):
        return [(code // p**k) % p for k in range(d)]

    def code(v):
        return sum((c % p) * p**k for k, c in enumerate(v))

    vecs = [vec(c) for c in range(nv)]
    add = [[code([x + y for x, y in zip(vecs[u], vecs[w])]) for w in range(nv)] for u in range(nv)]
    elems = list(G.elements())
    act = {
        g: [code([sum(mats[g][r][k] * vecs[w][k] for k in range(d)) for r in range(d)]) for w in range(nv)]
        for g in elems
    }
    gidx = {g: k for k, g in enumerate(elems)}
    n = nv * G.order
    table = []
    for g in elems:
        for v in range(nv):
            row = []
            for h in elems:
                gh = gidx[G.mul(g, h)]
                for w in range(nv):
                    row.append(gh * nv + add[v][act[g][w]])
            table.append(tuple(row))
    # index of (v, g) is gidx[g] * nv + v; rows were emitted in that order
    labels = tuple(f"({vecs[v]},({g.t},{g.i}))" for g in elems for v in range(nv))
    return FiniteGroupTable(n, labels, tuple(table))


# ---------------------------------------------------------------------------
# recognition


def abelian_invariants(T: FiniteGroupTable) -> tuple[int, ...]:
    """Elementary divisors (prime powers), sorted, of an abelian table group."""
    orders = T.element_orders
    out = []
    for ell, big_k in sorted(factorint(T.order).items()):
        # exps[k] = log_ell #{x : x^(ell^k) = 1} = sum_i min(k, lambda_i)
        exps = [0]
        k = 0
        while exps[-1] < big_k:
            k += 1
            count = sum(1 for o in orders if (ell**k) % o == 0)
            exps.append(round(math.log(count, ell)))
        at_least = [exps[j] - exps[j - 1] for j in range(1, len(exps))] + [0]
        for j in range(len(at_least) - 1):
            out += [ell ** (j + 1)] * (at_least[j] - at_least[j + 1])
    return tuple(sorted(out))


def group_signature(T: FiniteGroupTable) -> dict:
    return {
        "order": T.order,
        "classes": T.class_count(),
        "derived": list(T.derived_series_orders()),
        "orders": sorted(Counter(T.element_orders).items()),
    }


def identify_small_group(T: FiniteGroupTable) -> str:
    """Name a small group from invariant signatures; never guesses.

    Names used: "cyclic n", "elementary-abelian p^k", "abelian a x b x ...",
    "S3", "A4", "S4", "dihedral n" (order 2n), else a signature string.
    """
    if T.order > TABLE_LIMIT:
        raise TooLarge(f"order {T.order} exceeds {TABLE_LIMIT}")
    n = T.order
    orders = T.element_orders
    if T.is_abelian:
        if n in orders:
            return f"cyclic {n}"
        fac = factorint(n)
        if len(fac) == 1:
            (ell, k), = fac.items()
            if all(o in (1, ell) for o in orders):
                return f"elementary-abelian {ell}^{k}"
        return "abelian " + " x ".join(str(x) for x in abelian_invariants(T))
    derived = T.derived_subgroup()
    classes = T.class_count()
    if n == 6:
        return "S3"
    if (n, len(derived), classes) == (12, 4, 4):
        return "A4"
    if (n, len(derived), classes) == (24, 12, 5):
        return "S4"
    if n % 2 == 0 and n >= 6:
        m = n // 2
        for r in range(n):
            if orders[r] == m:
                rot = T.generated([r])
                if all(orders[x] == 2 for x in range(n) if x not in rot):
                    return f"dihedral {m}"
                break
    sig = group_signature(T)
    return (
        f"signature(order={sig['order']}, classes={sig['classes']}, "
        f"derived={sig['derived']}, orders={sig['orders']})"
    )
