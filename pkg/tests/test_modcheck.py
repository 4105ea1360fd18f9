import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from littlegroups import modcheck
from littlegroups.char_orbits import enumerate_pairs, phi_orbits
from littlegroups.errors import NotIrreducible
from littlegroups.ffield import make_field
from littlegroups.linalg import freeze, identity, inverse, is_invertible, mat_mul
from littlegroups.matrep import MatrixRep, direct_sum, trivial_rep
from littlegroups.modcheck import (
    are_isomorphic,
    berman_irreducible_count,
    constituents,
    endomorphism_field,
    find_isomorphism,
    hom_space,
    irreducibility_witness,
    is_irreducible,
    line_plan,
    meataxe,
    spin,
    submodule_census,
)
from littlegroups.rep_builder import build_pi, build_rho, restrict_scalars
from littlegroups.twisted_group import make_group

from .helpers import small_groups

S3 = (2, 1, 3, 2)
A3 = (2, 2, 3, 1)
Z3 = (2, 1, 1, 3)


def pi_of(params, degree):
    G = make_group(*params)
    (orb,) = [o for o in phi_orbits(G) if o.degree == degree]
    return build_pi(G, orb)


def random_conjugate(rep: MatrixRep, rng) -> MatrixRep:
    F, n = rep.base, rep.degree
    while True:
        P = freeze(rng.integers(0, F.size, (n, n)))
        if is_invertible(F, P):
            break
    Pi = inverse(F, P)
    mats = [mat_mul(F, mat_mul(F, P, A), Pi) for A in rep.gens]
    return MatrixRep(F, n, mats[0], mats[1], rep.group)


def naive_closure(v, rep) -> int:
    """Size of the smallest invariant subspace through v, by closing a set of vectors."""
    p = rep.base.p
    gens = [np.array(A) for A in rep.gens]
    S = {tuple(c * x % p for x in v) for c in range(p)}
    while True:
        new = {tuple(int(y) for y in A @ np.array(x) % p) for A in gens for x in S}
        new |= {tuple((a + b) % p for a, b in zip(x, y)) for x in S for y in S}
        if new <= S:
            return len(S)
        S |= new


def naive_irreducible(rep) -> bool:
    p, n = rep.base.p, rep.degree
    return all(
        naive_closure(v, rep) == p**n for v in itertools.product(range(p), repeat=n) if any(v)
    )


# -- spinning


def test_spin_examples():
    pi = pi_of(S3, 2)
    assert spin((0, 0), pi) == ()
    assert len(spin((1, 0), pi)) == 2
    G = make_group(*S3)
    rho = build_rho(G, next(pc for pc in enumerate_pairs(G) if pc.orbit.s == 2))
    # gen_t is diagonal, so e_1 spans a T-stable line
    assert spin((1, 0), rho, gens=[rho.gen_t]) == ((1, 0),)


# -- irreducibility


def test_irreducibility_examples():
    G = make_group(*A3)
    F4 = make_field(2, 2)
    w = F4.generator
    assert is_irreducible(MatrixRep(F4, 1, ((w,),), ((1,),), G))
    pi = pi_of(S3, 2)
    assert is_irreducible(pi)
    twice = direct_sum(pi, pi)
    v = irreducibility_witness(twice)
    assert v is not None and any(v)
    assert 0 < len(spin(v, twice)) < 4


SMALL_REPS = []
for _params in small_groups(24):
    _G = make_group(*_params)
    for _orb in phi_orbits(_G):
        if _G.p ** _orb.degree <= 81:
            SMALL_REPS.append((_params, _orb.canonical.key))


def _small_pi(item):
    params, key = item
    G = make_group(*params)
    orb = next(o for o in phi_orbits(G) if o.canonical.key == key)
    return build_pi(G, orb)


@pytest.mark.parametrize("item", SMALL_REPS[::4], ids=str)
def test_irreducible_matches_naive_closure(item):
    pi = _small_pi(item)
    assert naive_irreducible(pi)
    assert is_irreducible(pi)
    if pi.degree <= 2:
        twice = direct_sum(pi, pi)
        assert not naive_irreducible(twice)
        assert not is_irreducible(twice)


@pytest.mark.parametrize("item", SMALL_REPS[::3], ids=str)
def test_meataxe_agrees_with_exhaustive(item):
    pi = _small_pi(item)
    res = meataxe(pi)
    assert res.irreducible is not False
    twice = direct_sum(pi, pi)
    res2 = meataxe(twice)
    if res2.irreducible is False:
        k = len(res2.submodule)
        assert 0 < k < twice.degree


@pytest.mark.parametrize(
    "params,key,degree",
    [((2, 1, 1, 49), (0, 49, 1), 21), ((2, 1, 3, 26), (1, 13, 1), 24), ((3, 1, 1, 17), (0, 17, 1), 16)],
)
def test_large_modules_are_decided_exhaustively(params, key, degree):
    G = make_group(*params)
    orb = next(o for o in phi_orbits(G) if o.canonical.key == key)
    pi = build_pi(G, orb)
    assert pi.degree == degree and G.p**degree > modcheck.EXHAUSTIVE_LIMIT
    count, pieces = line_plan(pi)
    assert count <= modcheck.LINE_LIMIT
    assert sum(R.shape[0] for R, _, _ in pieces) == degree
    assert is_irreducible(pi)
    assert meataxe(pi).irreducible is True


def test_large_reducible_module_gets_a_witness():
    pi = pi_of((2, 1, 1, 13), 12)
    twice = direct_sum(pi, pi)
    v = irreducibility_witness(twice)
    assert v is not None
    assert len(spin(v, twice)) == 12


def test_line_plan_pieces_are_invariant():
    pi = pi_of((2, 1, 3, 26), 24)
    p = pi.base.p
    count, pieces = line_plan(pi)
    for R, A, k in pieces:
        # the minimal polynomial of A on the piece is irreducible of degree k
        mp = modcheck._matrix_minpoly(A, p)
        assert len(mp) - 1 == k
        assert len(modcheck._factor_mod_p(mp, p)) == 1


# -- homomorphisms and isomorphism


def test_isomorphism_examples():
    pi = pi_of(S3, 2)
    P = find_isomorphism(pi, pi)
    assert P is not None and are_isomorphic(pi, pi)
    G = make_group(*Z3)
    F = make_field(2, 6)
    reps = [build_rho(G, pc, F) for pc in enumerate_pairs(G) if pc.lam.order == 3]
    assert [r.gen_s != reps[0].gen_s for r in reps] == [False, True]
    assert not are_isomorphic(reps[0], reps[1])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_REPS), st.integers(0, 2**32 - 1))
def test_isomorphic_to_random_conjugate(item, seed):
    pi = _small_pi(item)
    conj = random_conjugate(pi, np.random.default_rng(seed))
    P = find_isomorphism(pi, conj)
    assert P is not None
    F = pi.base
    for A, B in zip(pi.gens, conj.gens):
        assert mat_mul(F, P, A) == mat_mul(F, B, P)
    assert len(hom_space(pi, conj)) == len(hom_space(pi, pi))


def test_distinct_pis_are_not_isomorphic():
    G = make_group(2, 1, 7, 3)
    pis = [build_pi(G, o) for o in phi_orbits(G)]
    for a, b in itertools.combinations(pis, 2):
        if a.degree == b.degree:
            assert not are_isomorphic(a, b)
            assert hom_space(a, b) == []


# -- constituents and endomorphisms


def test_constituent_examples():
    pi = pi_of(S3, 2)
    assert constituents(pi) == [(pi, 1)]
    G = make_group(*S3)
    rho = build_rho(G, next(pc for pc in enumerate_pairs(G) if pc.orbit.s == 2))
    ((c, mult),) = constituents(restrict_scalars(rho))
    assert mult == 2 and are_isomorphic(c, pi)
    triv = trivial_rep(G, make_field(2, 1))
    assert constituents(direct_sum(triv, triv)) == [(triv, 2)]


def test_constituents_of_mixed_sum():
    G = make_group(2, 1, 7, 3)
    a, b, c = (build_pi(G, o) for o in phi_orbits(G)[:3])
    found = constituents(direct_sum(a, b, a, c))
    assert sorted((r.degree, k) for r, k in found) == sorted([(a.degree, 2), (b.degree, 1), (c.degree, 1)])


def test_endomorphism_field_examples():
    assert endomorphism_field(pi_of(S3, 2)) == 1
    assert endomorphism_field(pi_of(A3, 2)) == 2
    assert endomorphism_field(trivial_rep(make_group(*S3), make_field(2, 1))) == 1
    with pytest.raises(NotIrreducible):
        endomorphism_field(direct_sum(pi_of(S3, 2), pi_of(S3, 2)))


# -- census


def test_census_examples():
    assert submodule_census(pi_of(S3, 2), 2) == 3
    assert submodule_census(pi_of(A3, 2), 2) == 5
    assert submodule_census(pi_of(S3, 2), 1) == 1


@pytest.mark.parametrize("params", [(2, 1, 7, 3), (3, 1, 8, 2), (2, 2, 5, 2), (3, 1, 4, 2), (2, 1, 1, 6)])
def test_census_formula(params):
    G = make_group(*params)
    for orb in phi_orbits(G):
        pi = build_pi(G, orb)
        for m in (1, 2, 3):
            if G.p ** (pi.degree * m) > 1 << 16:
                break
            qE = G.p**orb.defdeg
            assert submodule_census(pi, m) == (qE**m - 1) // (qE - 1)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([it for it in SMALL_REPS if _small_pi(it).degree <= 3]), st.integers(0, 2**32 - 1))
def test_census_invariant_under_basis_change(item, seed):
    pi = _small_pi(item)
    conj = random_conjugate(pi, np.random.default_rng(seed))
    assert submodule_census(pi, 2) == submodule_census(conj, 2)


def test_berman_examples():
    assert berman_irreducible_count(make_group(*S3)) == 2
    assert berman_irreducible_count(make_group(*A3)) == 2
    assert berman_irreducible_count(make_group(2, 1, 1, 1)) == 1


def test_scalar_rep_is_reducible():
    G = make_group(3, 1, 1, 1)
    rep = MatrixRep(make_field(3, 1), 2, identity(2), identity(2), G)
    assert not is_irreducible(rep)
    assert constituents(rep) == [(trivial_rep(G, make_field(3, 1)), 2)]
