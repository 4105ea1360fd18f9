"""Shared parameter lists and oracles for the test suite."""

import itertools

import numpy as np

from littlegroups.twisted_group import FiniteGroupTable
from littlegroups.verification import sweep_parameters


def small_groups(max_order: int, primes=(2, 3), exponents=(1, 2)) -> list[tuple[int, int, int, int]]:
    return sweep_parameters(max_order, primes, exponents)


def distinct_groups(max_order: int, with_p: bool = False) -> list[tuple[int, int, int, int]]:
    """One parameter set per distinct group law (e, f, q mod e), optionally per p as well."""
    out, seen = [], set()
    for p, a, e, f in small_groups(max_order):
        key = (e, f, p**a % e) + ((p,) if with_p else ())
        if key not in seen:
            seen.add(key)
            out.append((p, a, e, f))
    return out


def associative(T: FiniteGroupTable) -> bool:
    A = np.array(T.table)
    return bool(np.array_equal(A[A], A[:, A]))


def count_polys_by_enumeration(p: int, d: int) -> int:
    """Monic irreducibles of degree d with nonzero constant term, by trial division."""

    def poly_mod(a, b):
        a = list(a)
        while len(a) >= len(b):
            c = a[-1]
            if c:
                shift = len(a) - len(b)
                for i, x in enumerate(b):
                    a[shift + i] = (a[shift + i] - c * x) % p
            a.pop()
        return a

    def monic(deg):
        for low in itertools.product(range(p), repeat=deg):
            yield list(low) + [1]

    count = 0
    for f in monic(d):
        if f[0] == 0:
            continue
        if all(any(poly_mod(f, g)) for k in range(1, d // 2 + 1) for g in monic(k)):
            count += 1
    return count
