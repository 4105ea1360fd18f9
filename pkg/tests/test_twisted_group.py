import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from littlegroups.char_orbits import phi_orbits
from littlegroups.errors import IncompatibleParameters, NonPrime
from littlegroups.ffield import make_field
from littlegroups.matrep import trivial_rep
from littlegroups.rep_builder import build_pi
from littlegroups.twisted_group import (
    FiniteGroupTable,
    GroupElem,
    conjugacy_classes,
    group_law,
    group_signature,
    group_table,
    identify_small_group,
    make_group,
    p_regular_class_orbits,
    twist_by_rep,
)

from .helpers import associative, distinct_groups


def table_classes(T: FiniteGroupTable) -> list[frozenset]:
    """Conjugacy classes by brute-force conjugation on the table."""
    inv = T.inverses
    seen, out = set(), []
    for x in range(T.order):
        if x in seen:
            continue
        cl = frozenset(T.mul(T.mul(g, x), inv[g]) for g in range(T.order))
        seen |= cl
        out.append(cl)
    return out


def table_berman(T: FiniteGroupTable, p: int) -> int:
    classes = table_classes(T)
    where = {x: k for k, cl in enumerate(classes) for x in cl}
    orders = T.element_orders

    def pth(x):
        y = T.identity
        for _ in range(p):
            y = T.mul(y, x)
        return y

    regular = {k for k, cl in enumerate(classes) if orders[next(iter(cl))] % p}
    parent = {k: k for k in regular}

    def find(k):
        while parent[k] != k:
            k = parent[k]
        return k

    for k in regular:
        j = where[pth(next(iter(classes[k])))]
        parent[find(k)] = find(j)
    return len({find(k) for k in regular})


def relabel(T: FiniteGroupTable, perm: list[int]) -> FiniteGroupTable:
    inv = [0] * len(perm)
    for i, x in enumerate(perm):
        inv[x] = i
    table = tuple(tuple(perm[T.mul(inv[x], inv[y])] for y in range(T.order)) for x in range(T.order))
    return FiniteGroupTable(T.order, tuple(str(i) for i in range(T.order)), table)


# -- construction


def test_make_group_examples():
    S3 = make_group(2, 1, 3, 2)
    assert S3.order == 6 and not S3.is_commutative
    A3 = make_group(2, 2, 3, 1)
    assert A3.order == 3 and A3.is_commutative
    Z3 = make_group(2, 1, 1, 3)
    assert Z3.order == 3 and Z3.e == 1


def test_make_group_errors():
    with pytest.raises(IncompatibleParameters):
        make_group(2, 1, 5, 2)
    with pytest.raises(NonPrime):
        make_group(6, 1, 1, 1)


def test_group_law_examples():
    G = make_group(2, 1, 3, 2)
    x = GroupElem(1, 1)
    assert group_law(G.identity, x, G) == x
    assert G.conjugate(GroupElem(1, 0), GroupElem(0, 1)) == GroupElem(2, 0)
    assert G.mul(x, x) == GroupElem(0, 0)
    assert G.element_order(x) == 2


@pytest.mark.parametrize("params", distinct_groups(200))
def test_table_is_a_group(params):
    G = make_group(*params)
    T = group_table(G)
    assert associative(T)
    assert all(T.mul(x, T.inverses[x]) == T.identity for x in range(T.order))


@pytest.mark.parametrize("params", [(2, 1, 3, 2), (3, 1, 8, 2), (2, 2, 5, 2), (3, 2, 16, 4), (2, 1, 7, 3)])
def test_table_agrees_with_group_law(params):
    G = make_group(*params)
    T = group_table(G)
    for g in G.elements():
        for h in G.elements():
            assert T.mul(G.index(g), G.index(h)) == G.index(G.mul(g, h))


@pytest.mark.parametrize("params", distinct_groups(64))
def test_sigma_conjugation_multiplies_by_q(params):
    G = make_group(*params)
    s = GroupElem(0, 1 % G.f)
    for t in range(G.e):
        assert G.conjugate(GroupElem(t, 0), s) == GroupElem(t * G.q % G.e, 0)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(distinct_groups(120)), st.data())
def test_element_order_matches_repeated_product(params, data):
    G = make_group(*params)
    g = GroupElem(data.draw(st.integers(0, G.e - 1)), data.draw(st.integers(0, G.f - 1)))
    k, h = 1, g
    while h != G.identity:
        h = G.mul(h, g)
        k += 1
    assert G.element_order(g) == k
    assert G.power(g, k) == G.identity
    assert G.mul(g, G.inverse(g)) == G.identity


# -- classes and Berman's count


def test_class_examples():
    S3 = make_group(2, 1, 3, 2)
    assert sorted(len(c) for c in conjugacy_classes(S3)) == [1, 2, 3]
    A3 = make_group(2, 2, 3, 1)
    assert [len(c) for c in conjugacy_classes(A3)] == [1, 1, 1]
    G16 = make_group(3, 1, 8, 2)
    assert len(conjugacy_classes(G16)) == len(table_classes(group_table(G16)))


@pytest.mark.parametrize("params", distinct_groups(120))
def test_classes_match_table_conjugation(params):
    G = make_group(*params)
    T = group_table(G)
    ours = sorted(sorted(G.index(g) for g in cl) for cl in conjugacy_classes(G))
    theirs = sorted(sorted(cl) for cl in table_classes(T))
    assert ours == theirs


def test_berman_examples():
    assert p_regular_class_orbits(make_group(2, 1, 3, 2)) == 2
    assert p_regular_class_orbits(make_group(2, 2, 3, 1)) == 2
    assert p_regular_class_orbits(make_group(2, 1, 1, 1)) == 1


@pytest.mark.parametrize("params", distinct_groups(100, with_p=True))
def test_berman_count_invariant_under_relabeling(params):
    G = make_group(*params)
    T = group_table(G)
    perm = list(range(T.order))
    random.Random(hash(params)).shuffle(perm)
    assert p_regular_class_orbits(G) == table_berman(T, G.p) == table_berman(relabel(T, perm), G.p)


# -- twisting and recognition


def cyclic_table(n):
    return FiniteGroupTable(n, tuple(map(str, range(n))), tuple(tuple((x + y) % n for y in range(n)) for x in range(n)))


def test_identify_cyclic():
    assert identify_small_group(cyclic_table(6)) == "cyclic 6"


def test_s3_signature():
    T = group_table(make_group(2, 1, 3, 2))
    assert identify_small_group(T) == "S3"
    sig = group_signature(T)
    assert (sig["order"], sig["classes"], sig["derived"]) == (6, 3, [6, 3, 1])


def test_twist_trivial_rep_gives_klein_group():
    G = make_group(2, 1, 1, 2)
    T = twist_by_rep(trivial_rep(G, make_field(2, 1)), G)
    assert T.verify()
    assert identify_small_group(T) == "elementary-abelian 2^2"


def degree_two_pi(params):
    G = make_group(*params)
    (orb,) = [o for o in phi_orbits(G) if o.degree == 2]
    return G, build_pi(G, orb)


def test_twist_s3_gives_s4():
    G, pi = degree_two_pi((2, 1, 3, 2))
    T = twist_by_rep(pi, G)
    assert T.order == 24 and T.verify()
    assert identify_small_group(T) == "S4"


@pytest.mark.parametrize("params", [(2, 1, 1, 3), (2, 2, 3, 1)])
def test_twist_cyclic_three_gives_a4(params):
    G, pi = degree_two_pi(params)
    T = twist_by_rep(pi, G)
    assert T.order == 12 and T.verify()
    assert identify_small_group(T) == "A4"
