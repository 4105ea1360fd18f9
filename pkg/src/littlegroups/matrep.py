"""Representations of a twisted group given by the images of its two generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import NotAHomomorphism
from .ffield import FieldDesc
from .linalg import Matrix, block_diag, identity, mat_mul, mat_pow, to_np
from .twisted_group import GroupElem, TwistedGroup


@dataclass(frozen=True)
class MatrixRep:
    """gen_t is the image of (1, 0), gen_s the image of sigma = (0, 1).

    The defining relations gen_t^e = 1, gen_s^f = 1 and
    gen_s gen_t = gen_t^q gen_s are checked on construction unless
    check=False.
    """

    base: FieldDesc
    degree: int
    gen_t: Matrix
    gen_s: Matrix
    group: TwistedGroup
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.check and not relations_hold(self):
            raise NotAHomomorphism(
                f"matrices of degree {self.degree} violate the relations of G({self.group.p},"
                f"{self.group.a},{self.group.e},{self.group.f})"
            )

    @property
    def gens(self) -> tuple[Matrix, Matrix]:
        return (self.gen_t, self.gen_s)

    @cached_property
    def np_gens(self) -> tuple[np.ndarray, np.ndarray]:
        return (to_np(self.gen_t), to_np(self.gen_s))

    def image(self, g: GroupElem) -> Matrix:
        F = self.base
        return mat_mul(F, mat_pow(F, self.gen_t, g.t), mat_pow(F, self.gen_s, g.i))

    def key(self) -> tuple:
        return (self.degree, self.gen_t, self.gen_s)


def relations_hold(rep: MatrixRep) -> bool:
    F, G, n = rep.base, rep.group, rep.degree
    eye = identity(n)
    if len(rep.gen_t) != n or len(rep.gen_s) != n:
        return False
    if F.m == 1:
        return _relations_hold_np(rep)
    if mat_pow(F, rep.gen_t, G.e) != eye:
        return False
    if mat_pow(F, rep.gen_s, G.f) != eye:
        return False
    lhs = mat_mul(F, rep.gen_s, rep.gen_t)
    rhs = mat_mul(F, mat_pow(F, rep.gen_t, G.qe), rep.gen_s)
    return lhs == rhs


def _np_pow(A: np.ndarray, k: int, p: int) -> np.ndarray:
    result = np.eye(A.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            result = result @ A % p
        k >>= 1
        if k:
            A = A @ A % p
    return result


def _relations_hold_np(rep: MatrixRep) -> bool:
    p, G = rep.base.p, rep.group
    T, S = rep.np_gens
    if T.shape != (rep.degree, rep.degree) or S.shape != T.shape:
        return False
    eye = np.eye(rep.degree, dtype=np.int64)
    if not np.array_equal(_np_pow(T, G.e, p), eye) or not np.array_equal(_np_pow(S, G.f, p), eye):
        return False
    return np.array_equal(S @ T % p, _np_pow(T, G.qe, p) @ S % p)


def direct_sum(*reps: MatrixRep) -> MatrixRep:
    first = reps[0]
    return MatrixRep(
        first.base,
        sum(r.degree for r in reps),
        block_diag(*(r.gen_t for r in reps)),
        block_diag(*(r.gen_s for r in reps)),
        first.group,
    )


def trivial_rep(G: TwistedGroup, F: FieldDesc) -> MatrixRep:
    return MatrixRep(F, 1, ((1,),), ((1,),), G)


def pullback(rep: MatrixRep, G_big: TwistedGroup) -> MatrixRep:
    """rep composed with the projection G_big -> rep.group, (t, i) -> (t mod e, i mod f).

    The generators of G_big map to the generators of rep.group, so the
    matrices are unchanged; the relations are re-checked for G_big.
    """
    G = rep.group
    if G_big.e % G.e or G_big.f % G.f or G_big.p != G.p or G_big.a != G.a:
        raise NotAHomomorphism("no canonical projection between these groups")
    return MatrixRep(rep.base, rep.degree, rep.gen_t, rep.gen_s, G_big)
