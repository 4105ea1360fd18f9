"""Explicit matrices for rho_{chi,lambda}, descent to F_p, and parameter recovery.

Root-of-unity convention.  A pair is stored as integers (c mod e, lambda
order, lambda log).  To turn it into field elements, let d be the order of
chi_c, d_lam the order of lambda and N = lcm(d, d_lam).  Fix h_N, the
lexicographically smallest monic irreducible factor of the N-th cyclotomic
polynomial over F_p.  In any field F containing the N-th roots of unity,
zeta_N is the smallest root of h_N in F (lex order on coefficient tuples),
zeta_d = zeta_N^(N/d) and zeta_{d_lam} = zeta_N^(N/d_lam).  Then

    chi_c(t0) = zeta_d^(c d / e),   lambda = zeta_{d_lam}^log.

N only depends on the Phi-orbit, and scaling c by e'/e (pulling back along
T' -> T) does not change d or c d / e, so labels are stable under both the
Frobenius action and change of level.  Over F_p(zeta_N) itself, F_p[x]/(h_N)
with x = zeta_N gives restriction of scalars through the companion matrix
of h_N, with no need to build that field as a table.

Basis convention for rho: b_0, ..., b_{s-1} with sigma b_i = b_{i+1} for
i < s-1 and sigma b_{s-1} = lambda b_0; t0 acts on b_i by chi^(q^-i).
"""

from __future__ import annotations

import functools
import math

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from .char_orbits import Lambda, PairClass, PhiOrbit, char_orbit_of
from .errors import (
    DegreeTooLarge,
    FieldTooLarge,
    IsotypicityViolation,
    NotMonomialForm,
    NotAScalar,
    OrderNotAvailable,
    TooLarge,
)
from .ffield import (
    MAX_DEGREE,
    FieldDesc,
    find_root,
    int_order,
    make_field,
    root_of_unity,
    tilde_degree,
)
from .linalg import (
    Matrix,
    freeze,
    identity,
    inverse,
    mat_mul,
    mat_pow,
    mat_vec,
    nullspace,
    nullspace_np,
    rref,
    scalar,
    to_np,
    transpose,
)
from .matrep import MatrixRep
from . import modcheck
from .twisted_group import TwistedGroup

RESTRICT_LIMIT = 64
PI_LIMIT = 96
ABS_IRR_LIMIT = 12
DESCENT_LIMIT = 12
NORM_SEARCH = 512
COSET_FIELD_LIMIT = 1 << 16

_x = symbols("x")


# ---------------------------------------------------------------------------
# roots of unity


@functools.lru_cache(maxsize=None)
def cyclotomic_factor(N: int, p: int) -> tuple[int, ...]:
    """Lex-smallest monic irreducible factor of Phi_N over F_p (coefficients low first).

    Coefficients are compared from the top degree down.  The factors are the
    products of x - z^j over the cosets of <p> in (Z/N)^x, z any primitive
    N-th root of unity in F_{p^m}, m = ord(p mod N).
    """
    if N % p == 0:
        raise OrderNotAvailable(f"no primitive {N}-th roots of unity in characteristic {p}")
    if N == 1:
        return (p - 1, 1)
    m = int_order(p, N)
    if m > MAX_DEGREE or p**m > COSET_FIELD_LIMIT:
        return cyclotomic_factor_sympy(N, p)
    F = make_field(p, m)
    z = root_of_unity(F, N).code
    facs, seen = [], set()
    for j0 in range(1, N):
        if math.gcd(j0, N) != 1 or j0 in seen:
            continue
        poly = [1]
        j = j0
        for _ in range(m):
            seen.add(j)
            root = F.neg(F.pow(z, j))
            # poly *= (x + root)
            poly = [F.add(a, F.mul(root, b)) for a, b in zip([0] + poly, poly + [0])]
            j = j * p % N
        # coefficients lie in F_p, i.e. are constant codes
        facs.append(tuple(poly))
    return min(facs, key=lambda h: tuple(reversed(h)))


def cyclotomic_factor_sympy(N: int, p: int) -> tuple[int, ...]:
    """Same as cyclotomic_factor, by factoring Phi_N with sympy."""
    poly = Poly(cyclotomic_poly(N, _x), _x, modulus=p)
    facs = []
    for fac, _ in poly.factor_list()[1]:
        cs = [int(c) % p for c in reversed(fac.all_coeffs())]
        inv = pow(cs[-1], p - 2, p)
        facs.append(tuple(c * inv % p for c in cs))
    return min(facs, key=lambda h: tuple(reversed(h)))


def frame_degree(N: int, p: int) -> int:
    """[F_p(zeta_N) : F_p]."""
    return int_order(p, N)


@functools.lru_cache(maxsize=None)
def zeta(F: FieldDesc, N: int) -> int:
    """The normalized primitive N-th root of unity in F (a code)."""
    if (F.size - 1) % N:
        raise OrderNotAvailable(f"{N} does not divide |{F!r}^x| = {F.size - 1}")
    if N == 1:
        return 1
    h = list(cyclotomic_factor(N, F.p))
    if len(h) == 2:
        return (-h[0]) % F.p
    root = find_root(F, h)
    roots = [root]
    for _ in range(len(h) - 2):
        roots.append(F.pow(roots[-1], F.p))
    return min(roots, key=F.lex_key)


def pair_frame(G: TwistedGroup, pair: PairClass) -> tuple[int, int, int, int]:
    """(N, exponent of zeta_N for chi(t0), exponent of zeta_N for lambda, s)."""
    o, lam = pair.orbit, pair.lam
    N = math.lcm(o.d, lam.order)
    c_red = (o.rep_c * o.d // G.e) % o.d if G.e > 1 else 0
    return N, c_red * (N // o.d) % N, lam.log * (N // lam.order) % N, o.s


def _diag_exponents(G: TwistedGroup, pair: PairClass) -> list[int]:
    N, kc, _, s = pair_frame(G, pair)
    qinv = pow(G.q, -1, N) if N > 1 else 1
    return [kc * pow(qinv, i, N) % N for i in range(s)]


def splitting_degree(G: TwistedGroup) -> int:
    """Degree of F_p(mu_e, mu_f'), the subfield of l~ holding every chi(t0) and lambda."""
    fp = G.f
    while fp % G.p == 0:
        fp //= G.p
    return math.lcm(int_order(G.p, G.e), int_order(G.p, fp))


def tilde_field_checked(G: TwistedGroup) -> FieldDesc:
    m = tilde_degree(G.p, G.a, G.f)
    if m > MAX_DEGREE:
        raise FieldTooLarge(f"l~ has degree {m} over F_{G.p}, beyond {MAX_DEGREE}")
    return make_field(G.p, m)


# ---------------------------------------------------------------------------
# rho


def build_rho(G: TwistedGroup, pair: PairClass, field: FieldDesc | None = None) -> MatrixRep:
    """rho_{chi,lambda} as monomial matrices over `field` (default: l~)."""
    F = tilde_field_checked(G) if field is None else field
    N, _, kl, s = pair_frame(G, pair)
    z = zeta(F, N)
    exps = _diag_exponents(G, pair)
    gen_t = tuple(tuple(F.pow(z, exps[i]) if i == j else 0 for j in range(s)) for i in range(s))
    lam = F.pow(z, kl)
    rows = [[0] * s for _ in range(s)]
    for i in range(s - 1):
        rows[i + 1][i] = 1
    rows[0][s - 1] = lam
    return MatrixRep(F, s, gen_t, freeze(rows), G)


def is_absolutely_irreducible_witness(rho: MatrixRep) -> bool:
    """True iff the commutant of rho is one-dimensional over its base field."""
    if rho.degree > ABS_IRR_LIMIT:
        raise DegreeTooLarge(f"degree {rho.degree} exceeds {ABS_IRR_LIMIT}")
    return len(modcheck.hom_space(rho, rho)) == 1


def _discrete_root_log(F: FieldDesc, base: int, order: int, x: int) -> int:
    """k in [0, order) with base^k = x, by stepping through the powers."""
    cur = 1
    for k in range(order):
        if cur == x:
            return k
        cur = F.mul(cur, base)
    raise NotMonomialForm("value is not a power of the normalized root of unity")


def read_pair(G: TwistedGroup, F: FieldDesc, x: int, mu: int) -> tuple[int, Lambda]:
    """Character residue c and lambda label for chi(t0) = x and lambda = mu."""
    d = F.order(x)
    dl = F.order(mu)
    N = math.lcm(d, dl)
    z = zeta(F, N)
    c_red = _discrete_root_log(F, F.pow(z, N // d), d, x)
    log = _discrete_root_log(F, F.pow(z, N // dl), dl, mu)
    if G.e % d:
        raise NotMonomialForm(f"eigenvalue order {d} does not divide e = {G.e}")
    return c_red * (G.e // d) % G.e if G.e > 1 else 0, Lambda(dl, log, int_order(G.p, dl))


def recover_pair(rho: MatrixRep) -> PairClass:
    """Read (chi-bar, lambda) off a rep of the shape produced by build_rho."""
    F, G, s = rho.base, rho.group, rho.degree
    T, S = rho.gen_t, rho.gen_s
    if any(T[i][j] for i in range(s) for j in range(s) if i != j):
        raise NotMonomialForm("gen_t is not diagonal")
    for line in list(S) + list(transpose(S)):
        if sum(1 for v in line if v) != 1:
            raise NotMonomialForm("gen_s is not monomial")
    Ss = mat_pow(F, S, s)
    mu = Ss[0][0]
    if Ss != scalar(s, mu):
        raise NotAScalar("gen_s^s is not a homothety")
    c, lam = read_pair(G, F, T[0][0], mu)
    orbit = char_orbit_of(c, G)
    if orbit.s != s:
        raise NotMonomialForm(f"degree {s} differs from the orbit length {orbit.s}")
    d = F.order(T[0][0])
    if sorted(T[i][i] for i in range(s)) != sorted(F.pow(T[0][0], pow(G.q, k, d)) for k in range(s)):
        raise NotMonomialForm("diagonal of gen_t is not a single Sigma-orbit")
    return PairClass(orbit, lam)


# ---------------------------------------------------------------------------
# restriction of scalars


def multiplication_matrix(F: FieldDesc, z: int) -> Matrix:
    """Matrix of y -> z y on F over F_p in the basis 1, x, ..., x^(m-1)."""
    m = F.m
    cols = []
    xj = 1
    for _ in range(m):
        cols.append(F.digits(F.mul(z, xj)))
        xj = F.mul(xj, F.p) if m > 1 else xj
    return tuple(tuple(cols[j][i] for j in range(m)) for i in range(m))


def _expand_blocks(blocks: list[list[np.ndarray]], n: int, m: int) -> Matrix:
    out = np.zeros((n * m, n * m), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            out[i * m : (i + 1) * m, j * m : (j + 1) * m] = blocks[i][j]
    return freeze(out)


def restrict_scalars(rep: MatrixRep) -> MatrixRep:
    """View a rep over F_{p^m} as a rep over F_p of m times the degree."""
    F = rep.base
    n, m = rep.degree, F.m
    if n * m > RESTRICT_LIMIT:
        raise TooLarge(f"restricted degree {n * m} exceeds {RESTRICT_LIMIT}")
    Fp = make_field(F.p, 1)
    cache: dict[int, np.ndarray] = {}

    def block(z: int) -> np.ndarray:
        if z not in cache:
            cache[z] = to_np(multiplication_matrix(F, z))
        return cache[z]

    mats = []
    for A in rep.gens:
        mats.append(_expand_blocks([[block(A[i][j]) for j in range(n)] for i in range(n)], n, m))
    return MatrixRep(Fp, n * m, mats[0], mats[1], rep.group)


def companion(h: tuple[int, ...], p: int) -> np.ndarray:
    """Multiplication by x on F_p[x]/(h) in the basis 1, x, ..., x^(m-1)."""
    m = len(h) - 1
    C = np.zeros((m, m), dtype=np.int64)
    for j in range(m - 1):
        C[j + 1, j] = 1
    C[:, m - 1] = [(-c) % p for c in h[:m]]
    return C


def _np_pow(A: np.ndarray, k: int, p: int) -> np.ndarray:
    result = np.eye(A.shape[0], dtype=np.int64)
    base = A % p
    while k:
        if k & 1:
            result = (result @ base) % p
        k >>= 1
        if k:
            base = (base @ base) % p
    return result


def restricted_rho(G: TwistedGroup, pair: PairClass) -> MatrixRep:
    """rho written over E0 = F_p(zeta_N) and viewed over F_p (degree s [E0:F_p])."""
    p = G.p
    N, _, kl, s = pair_frame(G, pair)
    h = cyclotomic_factor(N, p) if N > 1 else (p - 1, 1)
    m0 = len(h) - 1
    if s * m0 > PI_LIMIT:
        raise TooLarge(f"restricted degree {s * m0} exceeds {PI_LIMIT}")
    C = companion(h, p)
    exps = _diag_exponents(G, pair)
    zero = np.zeros((m0, m0), dtype=np.int64)
    eye = np.eye(m0, dtype=np.int64)
    t_blocks = [[_np_pow(C, exps[i], p) if i == j else zero for j in range(s)] for i in range(s)]
    s_blocks = [[zero] * s for _ in range(s)]
    for i in range(s - 1):
        s_blocks[i + 1][i] = eye
    s_blocks[0][s - 1] = _np_pow(C, kl, p)
    Fp = make_field(p, 1)
    return MatrixRep(Fp, s * m0, _expand_blocks(t_blocks, s, m0), _expand_blocks(s_blocks, s, m0), G)


# ---------------------------------------------------------------------------
# pi


def _frobenius_matrix(h: tuple[int, ...], p: int, k: int) -> np.ndarray:
    """Matrix of y -> y^(p^k) on F_p[x]/(h), basis 1, x, ..., x^(m-1)."""
    m = len(h) - 1
    C = companion(h, p)
    # x^(p^k) as a matrix: repeated p-th powers of multiplication by x
    Y = C
    for _ in range(k):
        Y = _np_pow(Y, p, p)
    cols = [np.eye(m, dtype=np.int64)[:, 0]]
    for _ in range(m - 1):
        cols.append(Y @ cols[-1] % p)
    return np.stack(cols, axis=1)


def descent_operator(G: TwistedGroup, orbit: PhiOrbit, R: MatrixRep) -> np.ndarray | None:
    """An F_p-linear Psi on restricted_rho whose fixed points are pi, or None.

    With delta = defdeg, Frob_delta (y -> y^(p^delta) on each E0 coordinate)
    carries rho to the rho of (chi^(p^delta), lambda^(p^delta)), and this pair
    is (chi^(q^-u), lambda) for some u.  So Psi = a rho(sigma)^u Frob_delta
    commutes with G.  It is semilinear over E0, Psi^(m0/delta) is the scalar
    N(a) lambda^(u m0 / (delta s)), and a is chosen to make that 1
    (see _norm_preimage).
    The fixed points then form an F_p-form of rho over the field of degree
    delta, so they have dimension s delta = deg pi and R is a sum of m0/delta
    copies of them.  None means no suitable (u, a) was found.
    """
    pair = orbit.canonical
    p, q = G.p, G.q
    N, _, kl, s = pair_frame(G, pair)
    h = cyclotomic_factor(N, p) if N > 1 else (p - 1, 1)
    m0 = len(h) - 1
    delta = orbit.defdeg
    if m0 % delta:
        return None
    k = m0 // delta
    d = pair.orbit.d
    pd = pow(p, delta, d) if d > 1 else 0
    u0 = next((u for u in range(s) if d == 1 or pd * pow(q, u, d) % d == 1), None)
    if u0 is None:
        return None
    C = companion(h, p)
    Phi = _frobenius_matrix(h, p, delta)
    n = R.degree
    Phi_b = np.zeros((n, n), dtype=np.int64)
    for i in range(s):
        Phi_b[i * m0 : (i + 1) * m0, i * m0 : (i + 1) * m0] = Phi
    S = to_np(R.gen_s)
    S_u = _np_pow(S, u0, p)
    c_exp = kl * (u0 * k // s) % N
    a = _norm_preimage(C, Phi, k, (-c_exp) % N, N, p, delta)
    if a is None:
        return None
    Psi = np.kron(np.eye(s, dtype=np.int64), a) @ S_u % p @ Phi_b % p
    if not np.array_equal(_np_pow(Psi, k, p), np.eye(n, dtype=np.int64)):
        return None
    return Psi


def _norm_preimage(C: np.ndarray, Phi: np.ndarray, k: int, target_exp: int, N: int, p: int, delta: int):
    """Multiplication matrix of some a in E0 with N_{E0/k}(a) = zeta_N^target_exp, or None.

    Powers of zeta_N are tried first.  Otherwise a0 runs through the
    non-constant polynomials in x (code order); with b = N(a0), the element
    b^((p^delta - 1)/o) generates the order-o subgroup holding the target
    whenever b generates k^x, and then a = a0^j for a small j.
    """
    m0 = C.shape[0]
    norm_exp = sum(pow(p, delta * i, N) for i in range(k)) % N
    j = next((j for j in range(N) if (j * norm_exp - target_exp) % N == 0), None)
    if j is not None:
        return _np_pow(C, j, p)
    target = _np_pow(C, target_exp, p)
    o = N // math.gcd(N, target_exp)
    Kx = p**delta - 1
    if Kx % o:
        return None
    Phi_inv = _np_pow(Phi, k - 1, p)  # Phi^k = 1
    eye = np.eye(m0, dtype=np.int64)
    powers = [eye]
    for _ in range(m0 - 1):
        powers.append(powers[-1] @ C % p)
    for code in range(p, min(p**m0, NORM_SEARCH)):
        a0 = sum(dgt * P for dgt, P in zip(_base_digits(code, p, m0), powers)) % p
        b, conj = eye, a0
        for _ in range(k):
            b = b @ conj % p
            conj = Phi @ conj % p @ Phi_inv % p
        g = _np_pow(b, Kx // o, p)
        cur = eye
        for t in range(o):
            if np.array_equal(cur, target):
                return _np_pow(a0, (Kx // o) * t, p)
            cur = cur @ g % p
    return None


def _base_digits(code: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        code, r = divmod(code, p)
        out.append(r)
    return out


def build_pi(G: TwistedGroup, orbit: PhiOrbit, method: str = "descent") -> MatrixRep:
    """The irreducible F_p-representation attached to a Phi-orbit.

    rho is written over E0 = F_p(chi, lambda) and restricted to F_p; pi is
    one of its composition factors, all of which are isomorphic.

    method="descent" takes the fixed points of `descent_operator` (their
    dimension being s defdeg certifies that R is pi-isotypic).
    method="constituents" splits R with modcheck.constituents and checks that
    a single isomorphism type occurs; it is also the fallback.
    """
    R = restricted_rho(G, orbit.canonical)
    if method == "descent":
        Psi = descent_operator(G, orbit, R)
        if Psi is not None:
            fixed = nullspace_np((Psi - np.eye(R.degree, dtype=np.int64)) % G.p, G.p)
            if fixed.shape[0] == orbit.degree:
                return modcheck.submodule_rep(R, freeze(fixed))
            raise IsotypicityViolation(
                f"fixed points of the descent operator for {orbit.canonical.key} have dimension "
                f"{fixed.shape[0]}, expected {orbit.degree}"
            )
    elif method != "constituents":
        raise ValueError(f"unknown method {method!r}")
    factors = modcheck.constituents(R)
    if len(factors) != 1:
        raise IsotypicityViolation(
            f"restriction of rho for {orbit.canonical.key} has {len(factors)} distinct constituents"
        )
    pi, mult = factors[0]
    if pi.degree != orbit.degree or pi.degree * mult != R.degree:
        raise IsotypicityViolation(
            f"constituent degree {pi.degree} (x{mult}) disagrees with lcm(r, s w) = {orbit.degree}"
        )
    return pi


def image_order(rep: MatrixRep) -> int:
    """Order of the matrix group generated by rep (small groups only)."""
    F = rep.base
    seen = {identity(rep.degree)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for A in frontier:
            for g in rep.gens:
                B = mat_mul(F, A, g)
                if B not in seen:
                    seen.add(B)
                    nxt.append(B)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# descent check


def _extend_scalars(rep: MatrixRep, F: FieldDesc) -> MatrixRep:
    if rep.base.m != 1 or rep.base.p != F.p:
        raise ValueError("extension of scalars starts from the prime field")
    return MatrixRep(F, rep.degree, rep.gen_t, rep.gen_s, rep.group, check=False)


def _coordinates_in(F: FieldDesc, cols: list[tuple[int, ...]]):
    """Closure giving coordinates of vectors in span(cols) (cols independent)."""
    B = transpose(tuple(cols))  # n x k, columns are the basis
    _, piv = rref(F, tuple(cols))
    sub = tuple(tuple(B[r][j] for j in range(len(cols))) for r in piv)
    sub_inv = inverse(F, sub)

    def coords(u):
        return mat_vec(F, sub_inv, [u[r] for r in piv])

    return coords


def _monomial_constituent(rep: MatrixRep, v, s: int) -> MatrixRep:
    """Sub-rep spanned by v, sigma v, ..., sigma^(s-1) v in that basis."""
    F = rep.base
    basis = [tuple(v)]
    for _ in range(s - 1):
        basis.append(mat_vec(F, rep.gen_s, basis[-1]))
    spun = modcheck.spin(v, rep)
    if len(spun) != s:
        raise NotMonomialForm(f"joint eigenvector spins to dimension {len(spun)}, expected {s}")
    coords = _coordinates_in(F, basis)
    mats = []
    for A in rep.gens:
        cols = [coords(mat_vec(F, A, b)) for b in basis]
        mats.append(transpose(tuple(cols)))
    return MatrixRep(F, s, mats[0], mats[1], rep.group)


def decompose_pi_over_tilde(pi: MatrixRep, G: TwistedGroup | None = None, field: FieldDesc | None = None) -> list[PairClass]:
    """Pairs (with multiplicity) of the absolutely irreducible summands of pi over `field`.

    `field` defaults to l~, and the work is then done in its subfield
    F_p(mu_e, mu_f'): every eigenvalue involved lies there, and the labels
    do not depend on the ambient field.  For each eigenvalue x of gen_t whose character
    is the canonical member of its Sigma-orbit, and each eigenvalue mu of
    gen_s^s on that eigenspace, a joint eigenvector spins to one copy of
    rho; the pair is read from that copy and counted with the dimension of
    the joint eigenspace.
    """
    G = pi.group if G is None else G
    if pi.degree > DESCENT_LIMIT:
        raise TooLarge(f"degree {pi.degree} exceeds {DESCENT_LIMIT}")
    if field is None:
        tilde_field_checked(G)
        F = make_field(G.p, splitting_degree(G))
    else:
        F = field
    rep = _extend_scalars(pi, F)
    n = rep.degree
    Q1 = F.size - 1
    ge = math.gcd(G.e, Q1)
    zt = root_of_unity(F, ge).code
    found: list[PairClass] = []
    x = 1
    for _ in range(ge):
        A = tuple(tuple(F.sub(a, x) if i == j else a for j, a in enumerate(row)) for i, row in enumerate(rep.gen_t))
        eig = nullspace(F, A, n)
        x_cur = x
        x = F.mul(x, zt)
        if not eig:
            continue
        d = F.order(x_cur)
        s = int_order(G.q, d)
        Ss = mat_pow(F, rep.gen_s, s)
        gf = math.gcd(G.f, Q1)
        zf = root_of_unity(F, gf).code
        mu = 1
        for _ in range(gf):
            B = tuple(tuple(F.sub(a, mu) if i == j else a for j, a in enumerate(row)) for i, row in enumerate(Ss))
            joint = nullspace(F, A + B, n)
            mu_cur = mu
            mu = F.mul(mu, zf)
            if not joint:
                continue
            c, _ = read_pair(G, F, x_cur, mu_cur)
            if char_orbit_of(c, G).rep_c != c:
                continue
            piece = _monomial_constituent(rep, joint[0], s)
            pair = recover_pair(piece)
            found.extend([pair] * len(joint))
    if sum(pc.orbit.s for pc in found) != n:
        raise NotMonomialForm(f"recovered summands have total degree {sum(pc.orbit.s for pc in found)}, not {n}")
    return sorted(found, key=lambda pc: pc.key)


def field_of_definition_degree(orbit: PhiOrbit) -> int:
    return orbit.defdeg
