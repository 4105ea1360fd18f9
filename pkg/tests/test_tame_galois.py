import itertools
import math

import pytest

from littlegroups.char_orbits import phi_orbits
from littlegroups.errors import LevelsIncompatible, NonPrime, ParameterError, TooLarge
from littlegroups.modcheck import is_irreducible
from littlegroups.rep_builder import build_pi
from littlegroups.tame_galois import (
    PFieldParams,
    classify_galois_reps,
    galois_group_at_level,
    level_params,
    minimal_f_by_scan,
    quotient_compatibility_check,
    ramification_partition,
    unramified_count,
)

from .helpers import count_polys_by_enumeration

FIELDS = [PFieldParams(p, a) for p in (2, 3) for a in (1, 2)]


# -- levels


def test_level_examples():
    lp = level_params(PFieldParams(2, 1), 2)
    assert (lp.e_n, lp.s_n, lp.f_n) == (3, 2, 6)
    lp = level_params(PFieldParams(2, 2), 2)
    assert (lp.e_n, lp.s_n, lp.f_n) == (3, 1, 3)
    for a in (1, 2, 3):
        lp = level_params(PFieldParams(2, a), 1)
        assert (lp.e_n, lp.s_n, lp.f_n) == (1, 1, 1)


def test_level_errors():
    with pytest.raises(NonPrime):
        PFieldParams(4, 1)
    with pytest.raises(ParameterError):
        PFieldParams(2, 0)
    with pytest.raises(ParameterError):
        level_params(PFieldParams(2, 1), 0)
    with pytest.raises(TooLarge):
        level_params(PFieldParams(2, 1), 21)


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: f"p{K.p}a{K.a}")
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_level_invariants(K, n):
    lp = level_params(K, n)
    q = K.q
    assert lp.e_n == K.p**n - 1
    assert lp.f_n % lp.s_n == 0
    assert lp.f_n % lp.e_n == 0
    assert (q**lp.f_n - 1) % (lp.e_n * (q**lp.s_n - 1)) == 0
    assert lp.f_n == minimal_f_by_scan(q, lp.e_n, lp.s_n)
    # s_n is the least s with e_n | q^s - 1
    assert lp.s_n == next(s for s in itertools.count(1) if (q**s - 1) % lp.e_n == 0)


def test_galois_group_examples():
    G = galois_group_at_level(PFieldParams(2, 1), 2)
    assert G.order == 18
    G = galois_group_at_level(PFieldParams(3, 1), 1)
    assert G.order == 4 and G.is_commutative
    assert galois_group_at_level(PFieldParams(2, 1), 1).order == 1


# -- classification


def test_classification_q2():
    recs = classify_galois_reps(PFieldParams(2, 1), 2)
    assert [(r.degree, r.unramified, r.e, r.label_r) for r in recs] == [
        (1, True, 1, None),
        (2, True, 1, None),
        (2, False, 3, 2),
    ]


def test_classification_q4():
    recs = classify_galois_reps(PFieldParams(2, 2), 2)
    deg2 = [r for r in recs if r.degree == 2]
    assert sum(r.unramified for r in deg2) == 1
    ram = [r for r in deg2 if not r.unramified]
    assert len(ram) == 3 and all(r.e == 3 for r in ram)
    assert len(recs) == 5


def test_classification_p3_degree_one():
    recs = classify_galois_reps(PFieldParams(3, 1), 1)
    assert len(recs) == 4 and all(r.degree == 1 for r in recs)
    part = ramification_partition(recs)
    assert list(part) == [1]
    assert all(r.e == 2 for r in part[1])


def test_partition_examples():
    recs = classify_galois_reps(PFieldParams(2, 1), 2)
    part = ramification_partition(recs)
    assert list(part) == [2] and len(part[2]) == 1 and part[2][0].e == 3
    assert 1 not in part
    assert ramification_partition([r for r in recs if r.unramified]) == {}


def test_classification_errors():
    with pytest.raises(ParameterError):
        classify_galois_reps(PFieldParams(2, 1), 0)
    with pytest.raises(TooLarge):
        classify_galois_reps(PFieldParams(2, 1), 7)


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: f"p{K.p}a{K.a}")
def test_records_are_irreducible_of_the_right_degree(K):
    for rec in classify_galois_reps(K, 4):
        G = galois_group_at_level(K, rec.level)
        pi = build_pi(G, rec.orbit)
        o = rec.orbit.orbit
        assert pi.degree == rec.degree == math.lcm(o.r, o.s * rec.orbit.lam.w)
        assert is_irreducible(pi)
        if not rec.unramified:
            assert rec.degree % rec.label_r == 0


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: f"p{K.p}a{K.a}")
def test_degree_d_records_cover_all_degree_d_orbits(K):
    # enumerating only degree d at level d must agree with the full table of G_d
    for d in (1, 2):
        G = galois_group_at_level(K, d)
        full = sorted(o.canonical.key for o in phi_orbits(G) if o.degree == d)
        recs = sorted(r.orbit.canonical.key for r in classify_galois_reps(K, d) if r.degree == d)
        assert full == recs


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_unramified_count_formula_vs_enumeration(p, d):
    assert unramified_count(p, d) == count_polys_by_enumeration(p, d)


# -- compatibility


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: f"p{K.p}a{K.a}")
@pytest.mark.parametrize("n,n2", [(1, 2), (1, 3), (1, 4), (2, 4)])
def test_quotient_compatibility(K, n, n2):
    rep = quotient_compatibility_check(K, n, n2)
    assert rep.passed
    assert rep.checked == len(rep.entries) > 0


def test_compatibility_errors():
    with pytest.raises(LevelsIncompatible):
        quotient_compatibility_check(PFieldParams(2, 1), 2, 3)
