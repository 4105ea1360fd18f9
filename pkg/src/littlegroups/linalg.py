"""Dense linear algebra over a FieldDesc.

Matrices are tuples of row tuples of element codes and act on column
vectors.  Prime fields go through numpy (int64, reduced mod p after every
product); extension fields use plain Python loops, which is fine at the
dimensions where they are needed (<= 16).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .ffield import FieldDesc

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def freeze(rows) -> Matrix:
    if isinstance(rows, np.ndarray):
        return tuple(tuple(int(x) for x in r) for r in rows)
    return tuple(tuple(r) for r in rows)


def to_np(A) -> np.ndarray:
    return np.array(A, dtype=np.int64).reshape(len(A), -1) if len(A) else np.zeros((0, 0), dtype=np.int64)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    return tuple((0,) * (n if m is None else m) for _ in range(n))


def scalar(n: int, c: int) -> Matrix:
    return tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


# ---------------------------------------------------------------------------
# products


def mat_mul(F: FieldDesc, A: Matrix, B: Matrix) -> Matrix:
    if F.m == 1:
        return freeze((to_np(A) @ to_np(B)) % F.p)
    add, mul = F.add, F.mul
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(F: FieldDesc, A: Matrix, v: Sequence[int]) -> Vector:
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = add(acc, mul(x, y))
        out.append(acc)
    return tuple(out)


def mat_add(F: FieldDesc, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(F.add(x, y) for x, y in zip(r, s)) for r, s in zip(A, B))


def mat_sub(F: FieldDesc, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(F.sub(x, y) for x, y in zip(r, s)) for r, s in zip(A, B))


def mat_scale(F: FieldDesc, c: int, A: Matrix) -> Matrix:
    return tuple(tuple(F.mul(c, x) for x in r) for r in A)


def mat_pow(F: FieldDesc, A: Matrix, k: int) -> Matrix:
    n = len(A)
    if k < 0:
        A = inverse(F, A)
        k = -k
    if F.m == 1:
        p = F.p
        result = np.eye(n, dtype=np.int64)
        base = to_np(A) % p
        while k:
            if k & 1:
                result = (result @ base) % p
            k >>= 1
            if k:
                base = (base @ base) % p
        return freeze(result)
    result = identity(n)
    base = A
    while k:
        if k & 1:
            result = mat_mul(F, result, base)
        k >>= 1
        if k:
            base = mat_mul(F, base, base)
    return result


def poly_eval(F: FieldDesc, coeffs: Sequence[int], A: Matrix) -> Matrix:
    """sum coeffs[i] A^i (Horner)."""
    n = len(A)
    if F.m == 1:
        p = F.p
        An = to_np(A) % p
        acc = np.zeros((n, n), dtype=np.int64)
        eye = np.eye(n, dtype=np.int64)
        for c in reversed(list(coeffs)):
            acc = (acc @ An + c * eye) % p
        return freeze(acc)
    acc = zeros(n)
    for c in reversed(list(coeffs)):
        acc = mat_add(F, mat_mul(F, acc, A), scalar(n, c))
    return acc


# ---------------------------------------------------------------------------
# elimination


def _rref_np(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    M = M % p
    rows, cols = M.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        if inv != 1:
            M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _rref_py(F: FieldDesc, rows) -> tuple[list[list[int]], list[int]]:
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == len(M):
            break
        k = next((i for i in range(r, len(M)) if M[i][c]), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        pr = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(M[i], pr)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rref(F: FieldDesc, rows) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if len(rows) == 0:
        return (), ()
    if F.m == 1:
        R, piv = _rref_np(to_np(rows), F.p)
        return freeze(R), tuple(piv)
    R, piv = _rref_py(F, rows)
    return freeze(R), tuple(piv)


def rank(F: FieldDesc, rows) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: FieldDesc, A, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : A x = 0}, one vector per free column (free entry = 1)."""
    if ncols is None:
        ncols = len(A[0]) if len(A) else 0
    if len(A) == 0:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    R, piv = rref(F, A)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(R, piv):
            if row[fc]:
                x[pc] = F.neg(row[fc])
        basis.append(tuple(x))
    return basis


def nullspace_np(A: np.ndarray, p: int) -> np.ndarray:
    """Prime-field nullspace returning an array of shape (k, ncols)."""
    ncols = A.shape[1]
    R, piv = _rref_np(A.copy(), p)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for i, fc in enumerate(free):
        out[i, fc] = 1
        if piv:
            out[i, piv] = (-R[:, fc]) % p
    return out


def inverse(F: FieldDesc, A: Matrix) -> Matrix:
    n = len(A)
    aug = [tuple(row) + tuple(1 if i == j else 0 for j in range(n)) for i, row in enumerate(A)]
    R, piv = rref(F, aug)
    if tuple(piv[:n]) != tuple(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in R)


def is_invertible(F: FieldDesc, A: Matrix) -> bool:
    return rank(F, A) == len(A)


def solve_coordinates(F: FieldDesc, basis_rref: Matrix, pivots: Sequence[int], v: Sequence[int]) -> Vector | None:
    """Coordinates of v in the row space of an RREF basis, or None if outside."""
    coords = tuple(v[c] for c in pivots)
    residue = list(v)
    for c, row in zip(coords, basis_rref):
        if c:
            residue = [F.sub(x, F.mul(c, y)) if y else x for x, y in zip(residue, row)]
    if any(residue):
        return None
    return coords


def conjugate(F: FieldDesc, A: Matrix, P: Matrix) -> Matrix:
    """P A P^{-1}."""
    return mat_mul(F, mat_mul(F, P, A), inverse(F, P))


def block_diag(*mats: Matrix) -> Matrix:
    n = sum(len(m) for m in mats)
    rows = []
    off = 0
    for M in mats:
        k = len(M)
        for r in M:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - k))
        off += k
    return tuple(rows)
