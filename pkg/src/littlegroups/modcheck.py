"""Module-theoretic checks: spinning, irreducibility, homomorphisms, constituents.

Everything here is independent of how a representation was built: the
inputs are just two generator matrices.  Prime fields run on numpy; the
extension-field paths are plain Python and meant for small dimensions.

Two irreducibility tests are provided.  `is_irreducible` is exhaustive: it
spins one vector per line of V over a field F_p[A] (A a group image or an
endomorphism, see `line_plan`), or for small V one vector from every orbit
of nonzero vectors under the group, the scalars and an invertible
endomorphism.  Either way every nonzero submodule contains one of the spun
vectors.  `meataxe_irreducible` is the Holt-Rees certificate for larger modules: for theta in the group
algebra and an irreducible factor h of a minimal polynomial of theta with
dim ker h(theta) = deg h, the module is irreducible iff one nonzero vector
of ker h(theta) spins to everything and one nonzero vector of
ker h(theta)^T spins to everything under the transposed generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from sympy import Poly, symbols

from .errors import NotIrreducible, TooLarge
from .ffield import FieldDesc, is_irreducible_poly
from .linalg import (
    Matrix,
    freeze,
    inverse,
    is_invertible,
    mat_mul,
    mat_vec,
    nullspace,
    _rref_np,
    nullspace_np,
    rref,
    to_np,
    transpose,
)
from .matrep import MatrixRep
from .twisted_group import TwistedGroup, p_regular_class_orbits

EXHAUSTIVE_LIMIT = 1 << 20
LINE_LIMIT = 1 << 13
SEED = 20240601

_x = symbols("x")


# ---------------------------------------------------------------------------
# echelon bookkeeping


class _EchelonNP:
    """Incrementally maintained RREF over F_p (rows are vectors)."""

    def __init__(self, n: int, p: int):
        self.n, self.p = n, p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.piv: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        if self.piv:
            v = (v - v[self.piv] @ self.rows) % self.p
        return v % self.p

    def add(self, v: np.ndarray) -> bool:
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = r * pow(int(r[c]), self.p - 2, self.p) % self.p
        if self.piv:
            self.rows = (self.rows - np.outer(self.rows[:, c], r)) % self.p
        self.rows = np.vstack([self.rows, r])
        self.piv.append(c)
        return True

    def basis(self) -> np.ndarray:
        order = np.argsort(self.piv)
        return self.rows[order]

    @property
    def dim(self) -> int:
        return len(self.piv)


class _EchelonPy:
    def __init__(self, F: FieldDesc, n: int):
        self.F, self.n = F, n
        self.rows: list[list[int]] = []
        self.piv: list[int] = []

    def reduce(self, v) -> list[int]:
        F = self.F
        v = list(v)
        for row, c in zip(self.rows, self.piv):
            if v[c]:
                k = v[c]
                v = [F.sub(x, F.mul(k, y)) if y else x for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        F = self.F
        r = self.reduce(v)
        c = next((i for i, x in enumerate(r) if x), None)
        if c is None:
            return False
        inv = F.inv(r[c])
        r = [F.mul(inv, x) for x in r]
        new_rows = []
        for row in self.rows:
            if row[c]:
                k = row[c]
                row = [F.sub(x, F.mul(k, y)) if y else x for x, y in zip(row, r)]
            new_rows.append(row)
        self.rows = new_rows + [r]
        self.piv.append(c)
        return True

    def basis(self) -> list[list[int]]:
        return [row for _, row in sorted(zip(self.piv, self.rows))]

    @property
    def dim(self) -> int:
        return len(self.piv)


# ---------------------------------------------------------------------------
# spinning


def _spin_np(v: np.ndarray, gens: list[np.ndarray], p: int, record: bool = False):
    n = v.shape[0]
    ech = _EchelonNP(n, p)
    spun: list[np.ndarray] = []
    words: list[tuple[int, int]] = []
    if not ech.add(v):
        return ech, spun, words
    spun.append(v % p)
    words.append((-1, -1))
    j = 0
    while j < len(spun):
        for gi, A in enumerate(gens):
            u = (A @ spun[j]) % p
            if ech.add(u):
                spun.append(u)
                words.append((j, gi))
                if ech.dim == n:
                    return ech, spun, words
        j += 1
    return ech, spun, words


def _spin_py(F: FieldDesc, v, gens: list[Matrix]):
    n = len(v)
    ech = _EchelonPy(F, n)
    spun = []
    words = []
    if not ech.add(v):
        return ech, spun, words
    spun.append(tuple(v))
    words.append((-1, -1))
    j = 0
    while j < len(spun):
        for gi, A in enumerate(gens):
            u = mat_vec(F, A, spun[j])
            if ech.add(u):
                spun.append(u)
                words.append((j, gi))
                if ech.dim == n:
                    return ech, spun, words
        j += 1
    return ech, spun, words


def spin(v, rep: MatrixRep, gens: list[Matrix] | None = None) -> Matrix:
    """RREF basis of the smallest subspace containing v stable under the generators."""
    F = rep.base
    gens = list(rep.gens) if gens is None else gens
    if F.m == 1:
        ech, _, _ = _spin_np(np.array(v, dtype=np.int64), [to_np(A) for A in gens], F.p)
        return freeze(ech.basis()) if ech.dim else ()
    ech, _, _ = _spin_py(F, v, gens)
    return freeze(ech.basis()) if ech.dim else ()


# ---------------------------------------------------------------------------
# sub- and quotient modules


def submodule_rep(rep: MatrixRep, basis: Matrix) -> MatrixRep:
    """Action on the span of an RREF basis (rows), in that basis."""
    F = rep.base
    R, piv = rref(F, basis)
    k = len(piv)
    if F.m == 1:
        Rn = to_np(R)
        mats = [freeze((Rn @ A.T % F.p)[:, list(piv)].T) for A in rep.np_gens]
        return MatrixRep(F, k, mats[0], mats[1], rep.group)
    mats = []
    for A in rep.gens:
        cols = [mat_vec(F, A, row) for row in R]
        mats.append(tuple(tuple(cols[j][piv[i]] for j in range(k)) for i in range(k)))
    return MatrixRep(F, k, mats[0], mats[1], rep.group)


def quotient_rep(rep: MatrixRep, basis: Matrix) -> MatrixRep:
    """Action on V / span(basis), with the non-pivot unit vectors as a basis."""
    F = rep.base
    n = rep.degree
    R, piv = rref(F, basis)
    pivset = set(piv)
    comp = [c for c in range(n) if c not in pivset]
    mats = []
    for A in rep.gens:
        cols = []
        for c in comp:
            u = list(row[c] for row in A)
            for row, pc in zip(R, piv):
                k = u[pc]
                if k:
                    u = [F.sub(x, F.mul(k, y)) if y else x for x, y in zip(u, row)]
            cols.append([u[i] for i in comp])
        k = len(comp)
        mats.append(tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))
    return MatrixRep(F, len(comp), mats[0], mats[1], rep.group)


def annihilator(F: FieldDesc, rows, n: int) -> Matrix:
    """RREF basis of {v : s . v = 0 for every row s}."""
    ker = nullspace(F, rows, n)
    return rref(F, ker)[0] if ker else ()


# ---------------------------------------------------------------------------
# homomorphisms


def _cyclic_generator(rep: MatrixRep, rng: np.random.Generator):
    n, F = rep.degree, rep.base
    candidates = [tuple(int(i == j) for i in range(n)) for j in range(min(n, 4))]
    for _ in range(4):
        candidates.append(tuple(int(x) for x in rng.integers(0, F.size, n)))
    for v in candidates:
        if not any(v):
            continue
        if F.m == 1:
            ech, spun, words = _spin_np(np.array(v, dtype=np.int64), list(rep.np_gens), F.p)
        else:
            ech, spun, words = _spin_py(F, v, list(rep.gens))
        if ech.dim == n:
            return spun, words
    return None


def hom_space(rep1: MatrixRep, rep2: MatrixRep) -> list[Matrix]:
    """Basis of {X : X rep1(g) = rep2(g) X} (X is n2 x n1)."""
    F = rep1.base
    rng = np.random.default_rng(SEED)
    cyc = _cyclic_generator(rep1, rng)
    if cyc is None:
        return _hom_space_kron(rep1, rep2)
    spun, words = cyc
    if F.m == 1:
        return _hom_cyclic_np(rep1, rep2, spun, words)
    return _hom_cyclic_py(rep1, rep2, spun, words)


def _hom_cyclic_np(rep1, rep2, spun, words) -> list[Matrix]:
    p = rep1.base.p
    n1, n2 = rep1.degree, rep2.degree
    W = np.array(spun, dtype=np.int64).T % p  # columns w_j
    Winv = to_np(inverse(rep1.base, freeze(W)))
    g1 = rep1.np_gens
    g2 = rep2.np_gens
    M = np.zeros((n1, n2, n2), dtype=np.int64)
    M[0] = np.eye(n2, dtype=np.int64)
    for j in range(1, n1):
        parent, gi = words[j]
        M[j] = (g2[gi] @ M[parent]) % p
    blocks = []
    for gi in range(2):
        C = (Winv @ ((g1[gi] @ W) % p)) % p  # column j: coordinates of g w_j
        lhs = np.einsum("ab,jbc->jac", g2[gi], M) % p
        rhs = np.einsum("lj,lab->jab", C, M) % p
        blocks.append(((lhs - rhs) % p).reshape(n1 * n2, n2))
    system = np.vstack(blocks)
    sol = nullspace_np(system, p)
    out = []
    for u in sol:
        cols = np.einsum("jab,b->aj", M, u) % p  # column j = M_j u
        X = (cols @ Winv) % p
        out.append(freeze(X))
    return out


def _hom_cyclic_py(rep1, rep2, spun, words) -> list[Matrix]:
    F = rep1.base
    n1, n2 = rep1.degree, rep2.degree
    W = transpose(tuple(tuple(v) for v in spun))
    Winv = inverse(F, W)
    Ms = [tuple(tuple(int(i == j) for j in range(n2)) for i in range(n2))]
    for j in range(1, n1):
        parent, gi = words[j]
        Ms.append(mat_mul(F, rep2.gens[gi], Ms[parent]))
    rows = []
    for gi in range(2):
        C = mat_mul(F, Winv, mat_mul(F, rep1.gens[gi], W))
        for j in range(n1):
            lhs = mat_mul(F, rep2.gens[gi], Ms[j])
            acc = [list(r) for r in lhs]
            for l in range(n1):
                c = C[l][j]
                if c:
                    for a in range(n2):
                        for b in range(n2):
                            if Ms[l][a][b]:
                                acc[a][b] = F.sub(acc[a][b], F.mul(c, Ms[l][a][b]))
            rows.extend(tuple(r) for r in acc)
    sol = nullspace(F, rows, n2)
    out = []
    for u in sol:
        cols = [mat_vec(F, Ms[j], u) for j in range(n1)]
        X = mat_mul(F, transpose(tuple(cols)), Winv)
        out.append(X)
    return out


def _hom_space_kron(rep1, rep2) -> list[Matrix]:
    F = rep1.base
    n1, n2 = rep1.degree, rep2.degree
    # unknown X[a][b] at index a * n1 + b; equation (X A1 - A2 X)[a][c] = 0
    rows = []
    for A1, A2 in zip(rep1.gens, rep2.gens):
        for a in range(n2):
            for c in range(n1):
                row = [0] * (n1 * n2)
                for b in range(n1):
                    if A1[b][c]:
                        row[a * n1 + b] = F.add(row[a * n1 + b], A1[b][c])
                for b in range(n2):
                    if A2[a][b]:
                        row[b * n1 + c] = F.sub(row[b * n1 + c], A2[a][b])
                rows.append(tuple(row))
    sol = nullspace(F, rows, n1 * n2)
    return [tuple(tuple(u[a * n1 + b] for b in range(n1)) for a in range(n2)) for u in sol]


def endomorphism_algebra(rep: MatrixRep) -> list[Matrix]:
    return hom_space(rep, rep)


def _combination(F: FieldDesc, coeffs, mats) -> Matrix:
    n = len(mats[0])
    m = len(mats[0][0])
    if F.m == 1:
        acc = np.zeros((n, m), dtype=np.int64)
        for c, M in zip(coeffs, mats):
            if c:
                acc = (acc + c * to_np(M)) % F.p
        return freeze(acc)
    acc = [[0] * m for _ in range(n)]
    for c, M in zip(coeffs, mats):
        if c:
            for i in range(n):
                for j in range(m):
                    if M[i][j]:
                        acc[i][j] = F.add(acc[i][j], F.mul(c, M[i][j]))
    return freeze(acc)


def find_isomorphism(rep1: MatrixRep, rep2: MatrixRep) -> Matrix | None:
    """An invertible X with X rep1(g) X^{-1} = rep2(g), or None."""
    if rep1.degree != rep2.degree or rep1.base != rep2.base:
        return None
    F = rep1.base
    H = hom_space(rep1, rep2)
    if not H:
        return None
    for X in H:
        if is_invertible(F, X):
            return X
    rng = np.random.default_rng(SEED)
    for _ in range(64):
        X = _combination(F, [int(c) for c in rng.integers(0, F.size, len(H))], H)
        if is_invertible(F, X):
            return X
    if F.size ** len(H) <= 1 << 16:
        for coeffs in itertools.product(range(F.size), repeat=len(H)):
            X = _combination(F, coeffs, H)
            if any(coeffs) and is_invertible(F, X):
                return X
    return None


def are_isomorphic(rep1: MatrixRep, rep2: MatrixRep) -> bool:
    return find_isomorphism(rep1, rep2) is not None


# ---------------------------------------------------------------------------
# exhaustive irreducibility


def _invertible_endomorphisms(rep: MatrixRep, limit: int = 2) -> list[Matrix]:
    F = rep.base
    H = hom_space(rep, rep)
    rng = np.random.default_rng(SEED)
    out = []
    for _ in range(16):
        if len(out) >= limit or len(H) <= 1:
            break
        X = _combination(F, [int(c) for c in rng.integers(0, F.size, len(H))], H)
        if is_invertible(F, X):
            out.append(X)
    return out


def _primitive_root_mod(p: int) -> int:
    for g in range(1, p):
        if len({pow(g, k, p) for k in range(p - 1)}) == p - 1:
            return g
    return 1


def _apply_to_all_codes(A: np.ndarray, codes: np.ndarray, n: int, p: int) -> np.ndarray:
    """Codes of A v for every v, where code(v) = sum v_k p^k."""
    if p == 2:
        # XOR of the column codes selected by the bits of v
        cols = [int(sum(int(A[r, k]) << r for r in range(n))) for k in range(n)]
        img = np.zeros_like(codes)
        for k in range(n):
            if cols[k]:
                img ^= ((codes >> k) & 1) * cols[k]
        return img
    digits = []
    rest = codes
    for _ in range(n):
        rest, dgt = np.divmod(rest, p)
        digits.append(dgt)
    img = np.zeros_like(codes)
    for r in range(n):
        acc = np.zeros_like(codes)
        for k in range(n):
            if A[r, k]:
                acc += int(A[r, k]) * digits[k]
        img += (acc % p) * p**r
    return img


def _orbit_components_np(n: int, p: int, mats: list[np.ndarray]):
    """Connected components of F_p^n under the given invertible maps."""
    N = p**n
    codes = np.arange(N, dtype=np.int64)
    dst_all = [_apply_to_all_codes(A % p, codes, n, p) for A in mats]
    k = len(mats)
    # row v of the adjacency matrix lists the k images of v
    indices = np.stack(dst_all, axis=1).ravel().astype(np.int32)
    indptr = np.arange(0, N * k + 1, k, dtype=np.int32)
    graph = csr_matrix((np.ones(N * k, dtype=np.int8), indices, indptr), shape=(N, N))
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    return ncomp, labels


def _code_to_vec(code: int, n: int, p: int) -> np.ndarray:
    return np.array([(code // p**k) % p for k in range(n)], dtype=np.int64)


def irreducibility_witness(rep: MatrixRep):
    """Exhaustive search; returns a nonzero vector with a proper spin, or None.

    Over F_p a submodule W is stable under every group image and every
    endomorphism.  If some such A has irreducible minimal polynomial of
    degree k, W is a space over F_p[A] = F_{p^k}, so spinning one vector
    per F_p[A]-line covers every W.  If a group image A is semisimple,
    W is the sum of its intersections with the pieces ker g(A), g running
    over the irreducible factors of the minimal polynomial, so one vector
    per F_p[x]/g-line of each piece suffices.  The cheapest such plan is
    used when it has at most LINE_LIMIT lines.  Otherwise the nonzero
    vectors are split into orbits under the generators, the scalars and
    invertible endomorphisms (only below EXHAUSTIVE_LIMIT vectors).
    """
    F, n = rep.base, rep.degree
    if F.m > 1:
        if F.size**n > EXHAUSTIVE_LIMIT:
            raise TooLarge(f"{F.size}^{n} vectors exceed the exhaustive bound {EXHAUSTIVE_LIMIT}")
        return _irreducibility_witness_py(rep)
    p = F.p
    gens = list(rep.np_gens)
    ends = [to_np(X) for X in _invertible_endomorphisms(rep)]
    count, pieces = line_plan(rep, ends)
    if count <= LINE_LIMIT or p**n > EXHAUSTIVE_LIMIT:
        if count > LINE_LIMIT:
            raise TooLarge(f"{p}^{n} vectors and {count} lines exceed the exhaustive bounds")
        for R, A, k in pieces:
            for c in _line_representatives(A, k, R.shape[0], p):
                v = (c @ R) % p
                ech, _, _ = _spin_np(v, gens, p)
                if ech.dim < n:
                    return tuple(int(x) for x in v)
        return None
    return _witness_by_orbits(rep, ends)


def _lines(dim: int, k: int, p: int) -> int:
    return (p**dim - 1) // (p**k - 1)


def _restrict_to(A: np.ndarray, R: np.ndarray, piv: list[int], p: int) -> np.ndarray:
    """Matrix of A on the row space of the RREF basis R, in R's coordinates."""
    return ((A @ R.T) % p)[piv, :]


def _isotypic_plan(A: np.ndarray, p: int):
    """Pieces ker g(A) for a semisimple A, or None when A is not semisimple."""
    n = A.shape[0]
    mp = _matrix_minpoly(A, p)
    factors = _factor_mod_p(mp, p)
    if sum(len(g) - 1 for g in factors) != len(mp) - 1:
        return None
    pieces, count = [], 0
    for g in factors:
        K = nullspace_np(_poly_at_np(g, A, p), p)
        R, piv = _rref_np(K, p)
        R = R[: len(piv)]
        k = len(g) - 1
        count += _lines(len(piv), k, p)
        pieces.append((R, _restrict_to(A, R, piv, p), k))
    assert sum(R.shape[0] for R, _, _ in pieces) == n
    return count, pieces


def _group_images(rep: MatrixRep):
    """Images of the generators, then of every t^i s^j (skipping the first two)."""
    p = rep.base.p
    T, S = rep.np_gens
    yield T
    yield S
    G = rep.group
    e, f = (G.e, G.f) if G is not None else (1, 1)
    Tp = np.eye(rep.degree, dtype=np.int64)
    for i in range(e):
        M = Tp
        for j in range(f):
            if (i, j) not in ((0, 0), (1, 0), (0, 1)):
                yield M
            M = (M @ S) % p
        Tp = (Tp @ T) % p


def line_plan(rep: MatrixRep, ends: list[np.ndarray] | None = None, good_enough: int = 64):
    """(line count, pieces) for the cheapest line enumeration found.

    Each piece is (R, A, k): R an RREF basis of a subspace, A the matrix of
    a map with irreducible minimal polynomial of degree k on it.
    """
    p, n = rep.base.p, rep.degree
    eye = np.eye(n, dtype=np.int64)
    best = (_lines(n, 1, p), [(eye, eye, 1)])
    if ends is None:
        ends = [to_np(X) for X in _invertible_endomorphisms(rep)]
    field_gen = _endomorphism_subfield(rep, ends)
    if field_gen is not None:
        A, k = field_gen
        best = min(best, (_lines(n, k, p), [(eye, A, k)]), key=lambda b: b[0])
    if best[0] <= good_enough:
        return best
    for A in _group_images(rep):
        plan = _isotypic_plan(A, p)
        if plan is not None and plan[0] < best[0]:
            best = plan
            if best[0] <= good_enough:
                break
    return best


def _witness_by_orbits(rep: MatrixRep, ends: list[np.ndarray]):
    p, n = rep.base.p, rep.degree
    mats = list(rep.np_gens) + ends
    g = _primitive_root_mod(p)
    if g != 1:
        mats.append(np.eye(n, dtype=np.int64) * g)
    ncomp, labels = _orbit_components_np(n, p, mats)
    reps = np.full(ncomp, -1, dtype=np.int64)
    # smallest code in each component, computed vectorised
    order = np.argsort(labels, kind="stable")
    first = np.ones(len(order), dtype=bool)
    first[1:] = labels[order][1:] != labels[order][:-1]
    reps[labels[order][first]] = order[first]
    gens = list(rep.np_gens)
    for code in sorted(int(c) for c in reps):
        if code == 0:
            continue
        v = _code_to_vec(code, n, p)
        ech, _, _ = _spin_np(v, gens, p)
        if ech.dim < n:
            return tuple(int(x) for x in v)
    return None


def _matrix_minpoly(A: np.ndarray, p: int) -> list[int]:
    """Monic minimal polynomial of a square matrix, low coefficients first.

    Built up over the standard basis: if mu(A) e_j = u is nonzero then
    lcm(mu, mu_{e_j}) = mu * mu_u, with mu_u the Krylov minimal polynomial.
    """
    n = A.shape[0]
    mu = np.array([1], dtype=np.int64)
    for j in range(n):
        u = np.zeros(n, dtype=np.int64)
        u[j] = 1
        u = _poly_at_vec(mu, A, u, p)
        if u.any():
            nu = np.array(_krylov_minpoly(A, u, p), dtype=np.int64)
            mu = np.convolve(mu, nu) % p
    return [int(c) for c in mu]


def _poly_at_vec(coeffs_low, A: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(v)
    for c in reversed(list(coeffs_low)):
        acc = (A @ acc + int(c) * v) % p
    return acc


def _endomorphism_subfield(rep: MatrixRep, ends: list[np.ndarray]):
    """(A, k): an endomorphism with irreducible minimal polynomial of degree k > 1."""
    p = rep.base.p
    best = None
    for A in ends:
        mp = _matrix_minpoly(A, p)
        k = len(mp) - 1
        if k > 1 and (best is None or k > best[1]) and is_irreducible_poly(mp, p):
            best = (A, k)
    return best


def _line_representatives(A: np.ndarray, k: int, n: int, p: int):
    """One vector on each line of V viewed as a vector space over F_p[A]."""
    basis_cols: list[np.ndarray] = []
    ech = _EchelonNP(n, p)
    for j in range(n):
        if ech.dim == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[j] = 1
        if ech.reduce(e).any():
            u = e
            for _ in range(k):
                ech.add(u)
                basis_cols.append(u)
                u = (A @ u) % p
    B = np.array(basis_cols, dtype=np.int64).T  # column i*k + j is A^j v_i
    blocks = n // k
    for lead in range(blocks):
        tail = n - (lead + 1) * k
        head = np.zeros(n, dtype=np.int64)
        head[lead * k] = 1
        for rest in itertools.product(range(p), repeat=tail):
            coeff = head.copy()
            if tail:
                coeff[(lead + 1) * k :] = rest
            yield (B @ coeff) % p


def _irreducibility_witness_py(rep: MatrixRep):
    F, n = rep.base, rep.degree
    for tail in itertools.product(range(F.size), repeat=n):
        # one vector per line: first nonzero coordinate equal to 1
        lead = next((x for x in tail if x), None)
        if lead != 1:
            continue
        ech, _, _ = _spin_py(F, tail, list(rep.gens))
        if ech.dim < n:
            return tail
    return None


def is_irreducible(rep: MatrixRep) -> bool:
    return irreducibility_witness(rep) is None


# ---------------------------------------------------------------------------
# MeatAxe (Holt-Rees) over prime fields


def _krylov_minpoly(theta: np.ndarray, v: np.ndarray, p: int) -> list[int]:
    """Monic minimal polynomial of theta relative to v, coefficients low first."""
    n = v.shape[0]
    vecs = [v % p]
    ech = _EchelonNP(n, p)
    ech.add(vecs[0])
    while True:
        u = (theta @ vecs[-1]) % p
        if not ech.add(u):
            K = np.array(vecs + [u], dtype=np.int64).T
            sol = nullspace_np(K, p)
            c = sol[0]
            c = c * pow(int(c[-1]), p - 2, p) % p
            return [int(x) for x in c]
        vecs.append(u)


def _factor_mod_p(coeffs_low: list[int], p: int) -> list[list[int]]:
    """Distinct monic irreducible factors, low first, sorted by degree."""
    poly = Poly(list(reversed(coeffs_low)), _x, modulus=p)
    out = []
    for fac, _ in poly.factor_list()[1]:
        cs = [int(c) % p for c in reversed(fac.all_coeffs())]
        inv = pow(cs[-1], p - 2, p)
        out.append([c * inv % p for c in cs])
    out.sort(key=lambda h: (len(h), h))
    return out


def _poly_at_np(coeffs_low, A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(coeffs_low):
        acc = (acc @ A + c * eye) % p
    return acc


@dataclass
class MeatAxeResult:
    irreducible: bool | None
    submodule: Matrix | None = None


def meataxe(rep: MatrixRep, tries: int = 40, seed: int = SEED) -> MeatAxeResult:
    """Holt-Rees split/certify over a prime field; irreducible=None if undecided."""
    F, n = rep.base, rep.degree
    if F.m != 1:
        raise ValueError("meataxe runs over prime fields")
    p = F.p
    if n == 1:
        return MeatAxeResult(True)
    A, B = rep.np_gens
    gens = [A, B]
    gens_t = [A.T.copy(), B.T.copy()]
    rng = np.random.default_rng(seed)
    pool = [A, B]
    for _ in range(tries):
        i, j = rng.integers(0, len(pool), 2)
        pool.append((pool[i] @ pool[j]) % p)
        coeffs = rng.integers(0, p, len(pool))
        theta = np.zeros((n, n), dtype=np.int64)
        for c, M in zip(coeffs, pool):
            theta = (theta + int(c) * M) % p
        v = rng.integers(0, p, n)
        if not v.any():
            continue
        mv = _krylov_minpoly(theta, v, p)
        for h in _factor_mod_p(mv, p):
            H = _poly_at_np(h, theta, p)
            ker = nullspace_np(H, p)
            if len(ker) == 0:
                continue
            ech, _, _ = _spin_np(ker[0], gens, p)
            if ech.dim < n:
                return MeatAxeResult(False, freeze(ech.basis()))
            if len(ker) == len(h) - 1:
                kert = nullspace_np(H.T.copy(), p)
                ech_t, _, _ = _spin_np(kert[0], gens_t, p)
                if ech_t.dim < n:
                    sub = annihilator(F, freeze(ech_t.basis()), n)
                    return MeatAxeResult(False, sub)
                return MeatAxeResult(True)
            break
    return MeatAxeResult(None)


def meataxe_irreducible(rep: MatrixRep) -> bool:
    res = meataxe(rep)
    if res.irreducible is None:
        raise TooLarge("MeatAxe could not decide irreducibility")
    return res.irreducible


# ---------------------------------------------------------------------------
# constituents


def find_proper_submodule(rep: MatrixRep) -> Matrix | None:
    """RREF basis of a proper nonzero submodule, or None if rep is irreducible."""
    F, n = rep.base, rep.degree
    if n == 1:
        return None
    for j in range(min(n, 2)):
        e_j = tuple(int(i == j) for i in range(n))
        S = spin(e_j, rep)
        if len(S) < n:
            return S
    if F.m == 1:
        res = meataxe(rep)
        if res.irreducible is not None:
            return res.submodule
    w = irreducibility_witness(rep)
    return None if w is None else spin(w, rep)


def constituents(rep: MatrixRep) -> list[tuple[MatrixRep, int]]:
    """Composition factors up to isomorphism, with multiplicities.

    Sorted by (degree, matrices) of the chosen representative, which is the
    smallest such key in its isomorphism class among the factors found.
    """
    factors: list[MatrixRep] = []
    stack = [rep]
    while stack:
        cur = stack.pop()
        sub = find_proper_submodule(cur)
        if sub is None:
            factors.append(cur)
            continue
        stack.append(quotient_rep(cur, sub))
        stack.append(submodule_rep(cur, sub))
    classes: list[list[MatrixRep]] = []
    for fac in factors:
        for cls in classes:
            if cls[0].degree == fac.degree and are_isomorphic(cls[0], fac):
                cls.append(fac)
                break
        else:
            classes.append([fac])
    out = [(min(cls, key=lambda r: r.key()), len(cls)) for cls in classes]
    out.sort(key=lambda item: item[0].key())
    assert sum(r.degree * k for r, k in out) == rep.degree
    return out


def endomorphism_field(rep: MatrixRep) -> int:
    """Degree over F_p of End(rep), which is a field when rep is irreducible."""
    F = rep.base
    try:
        irreducible = is_irreducible(rep)
    except TooLarge:
        if F.m > 1:
            raise
        irreducible = meataxe_irreducible(rep)
    if not irreducible:
        raise NotIrreducible("endomorphism field needs an irreducible module")
    return len(hom_space(rep, rep)) * F.m


def absolute_irreducibility_degree(rep: MatrixRep) -> int:
    """dim over the base field of the commutant."""
    return len(hom_space(rep, rep))


# ---------------------------------------------------------------------------
# census of submodules of V^m isomorphic to V


def diagonal_power(V: MatrixRep, m: int) -> MatrixRep:
    from .linalg import block_diag

    return MatrixRep(V.base, V.degree * m, block_diag(*[V.gen_t] * m), block_diag(*[V.gen_s] * m), V.group)


def submodule_census(V: MatrixRep, m: int) -> int:
    """Count submodules of V^m isomorphic to V by spinning every vector."""
    F, n = V.base, V.degree
    if F.m != 1:
        raise ValueError("census runs over the prime field")
    p = F.p
    if p ** (n * m) > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"p^(dim m) = {p ** (n * m)} exceeds {EXHAUSTIVE_LIMIT}")
    W = diagonal_power(V, m)
    mats = list(W.np_gens)
    g = _primitive_root_mod(p)
    if g != 1:
        mats.append(np.eye(n * m, dtype=np.int64) * g)
    ncomp, labels = _orbit_components_np(n * m, p, mats)
    seen_comp: set[int] = set()
    found: dict[bytes, Matrix] = {}
    gens = list(W.np_gens)
    for code in range(1, p ** (n * m)):
        lab = int(labels[code])
        if lab in seen_comp:
            continue
        seen_comp.add(lab)
        ech, _, _ = _spin_np(_code_to_vec(code, n * m, p), gens, p)
        if ech.dim == n:
            basis = ech.basis()
            found.setdefault(basis.tobytes(), freeze(basis))
    count = 0
    for basis in found.values():
        if are_isomorphic(submodule_rep(W, basis), V):
            count += 1
    return count


def berman_irreducible_count(G: TwistedGroup) -> int:
    return p_regular_class_orbits(G)
