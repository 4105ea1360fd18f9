"""Finite fields F_{p^m} with deterministic moduli and generators.

An element c_0 + c_1 x + ... + c_{m-1} x^{m-1} of F_p[x]/(modulus) is encoded
as the integer c_0 + c_1 p + ... + c_{m-1} p^{m-1} (its "code").  Fields up to
TABLE_LIMIT elements get exp/log (and, for odd p, Zech) tables built with a
vectorised walk; larger fields use polynomial arithmetic directly.

Lexicographic order on elements and polynomials compares coefficient
vectors low-degree first.
"""

from __future__ import annotations

import functools
import itertools
import math
from array import array
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from sympy import factorint, isprime

from .errors import (
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    NoIrreducibleFound,
    NonPrime,
    NotASubfield,
    OrderNotAvailable,
    ResourceError,
    ZeroElement,
)

MAX_DEGREE = 24
TABLE_LIMIT = 1 << 20
LOG_LIMIT = 1 << 24


# ---------------------------------------------------------------------------
# polynomials over the prime field: lists of ints, low degree first, trimmed


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([c % p for c in out])


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    if len(a) <= db:
        return [], _ptrim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv_lead % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return _ptrim(q), _ptrim(a[:db])


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    return _pdivmod(a, b, p)[1]


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), mod, p)
    return result


def _bit_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a and a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _bit_mulmod(a: int, b: int, f: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return _bit_mod(r, f)


def _bit_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _bit_mod(a, b)
    return a


def is_irreducible_poly(f: list[int] | tuple[int, ...], p: int) -> bool:
    """Ben-Or's test for a monic polynomial over F_p.

    f is irreducible iff gcd(f, x^(p^k) - x) = 1 for every k <= deg(f)/2;
    reducible inputs usually fail at a small k, which keeps the search for
    the smallest irreducible polynomial cheap.
    """
    f = _ptrim(list(f))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    if p == 2:
        fb = _from_digits(f, 2)
        h = 2
        for _ in range(m // 2):
            h = _bit_mulmod(h, h, fb)
            if _bit_gcd(fb, h ^ 2) != 1:
                return False
        return True
    x = [0, 1]
    h = x
    for _ in range(m // 2):
        h = _ppowmod(h, p, f, p)
        if len(_pgcd(f, _psub(h, x, p), p)) > 1:
            return False
    return True


def is_irreducible_by_trial_division(f: list[int] | tuple[int, ...], p: int) -> bool:
    """Divide by every monic polynomial of degree <= m/2.  Exponential; tests only."""
    f = _ptrim(list(f))
    m = len(f) - 1
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _pmod(f, list(low) + [1], p):
                return False
    return m >= 1


# ---------------------------------------------------------------------------
# element codes


def _digits(x: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        x, r = divmod(x, p)
        out.append(r)
    return tuple(out)


def _from_digits(ds, p: int) -> int:
    code = 0
    for c in reversed(ds):
        code = code * p + c
    return code


def _lex_codes(p: int, m: int):
    """All codes in lexicographic order of (c_0, ..., c_{m-1})."""
    for ds in itertools.product(range(p), repeat=m):
        yield _from_digits(ds, p)


def _make_slow_mul(p: int, m: int, modulus: tuple[int, ...]) -> Callable[[int, int], int]:
    if m == 1:
        return lambda x, y: x * y % p
    if p == 2:
        modbits = _from_digits(modulus, 2)

        def mul2(x: int, y: int) -> int:
            r = 0
            while y:
                if y & 1:
                    r ^= x
                y >>= 1
                x <<= 1
                if (x >> m) & 1:
                    x ^= modbits
            return r

        return mul2

    mod = list(modulus)

    def mulp(x: int, y: int) -> int:
        if not x or not y:
            return 0
        a = _digits(x, p, m)
        b = _digits(y, p, m)
        prod = [0] * (2 * m - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    if v:
                        prod[i + j] += u * v
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * mod[j]
        return _from_digits([c % p for c in prod[:m]], p)

    return mulp


def _make_slow_add(p: int, m: int) -> Callable[[int, int], int]:
    if p == 2:
        return lambda x, y: x ^ y
    if m == 1:
        return lambda x, y: (x + y) % p

    def addp(x: int, y: int) -> int:
        res = 0
        scale = 1
        while x or y:
            x, u = divmod(x, p)
            y, v = divmod(y, p)
            res += ((u + v) % p) * scale
            scale *= p
        return res

    return addp


def _slow_pow(mul, x: int, k: int) -> int:
    result = 1
    while k:
        if k & 1:
            result = mul(result, x)
        k >>= 1
        if k:
            x = mul(x, x)
    return result


@functools.lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def _order_from_pow(pow_fn, x: int, n: int) -> int:
    order = n
    for ell, k in _factor(n):
        for _ in range(k):
            if pow_fn(x, order // ell) == 1:
                order //= ell
            else:
                break
    return order


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDesc:
    """The field F_p[x]/(modulus) with a fixed multiplicative generator.

    Arithmetic works on integer codes; `elem` wraps a code as an FFElem.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    generator: int
    size: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "size", self.p**self.m)
        self._install_arithmetic()

    # -- arithmetic installation
    def _install_arithmetic(self):
        p, m = self.p, self.m
        n = self.size - 1
        slow_mul = _make_slow_mul(p, m, self.modulus)
        slow_add = _make_slow_add(p, m)
        setattr_ = functools.partial(object.__setattr__, self)
        setattr_("_slow_mul", slow_mul)
        if m == 1:
            setattr_("add", lambda x, y: (x + y) % p)
            setattr_("sub", lambda x, y: (x - y) % p)
            setattr_("neg", lambda x: -x % p)
            setattr_("mul", lambda x, y: x * y % p)
            setattr_("_inv", lambda x: pow(x, p - 2, p))
            setattr_("_pow", lambda x, k: pow(x, k % n if x else k, p) if k >= 0 else pow(pow(x, p - 2, p), -k, p))
            setattr_("has_tables", False)
            return
        if self.size <= TABLE_LIMIT:
            self._build_tables(slow_mul)
            return
        setattr_("has_tables", False)
        setattr_("add", slow_add)
        setattr_("mul", slow_mul)
        if p == 2:
            setattr_("neg", lambda x: x)
            setattr_("sub", slow_add)
        else:
            def neg(x: int) -> int:
                res = 0
                scale = 1
                while x:
                    x, u = divmod(x, p)
                    res += (-u % p) * scale
                    scale *= p
                return res

            setattr_("neg", neg)
            setattr_("sub", lambda x, y: slow_add(x, neg(y)))

        def inv(x: int) -> int:
            return _slow_pow(slow_mul, x, n - 1)

        def pw(x: int, k: int) -> int:
            if x == 0:
                return 0 if k > 0 else 1
            k %= n
            return _slow_pow(slow_mul, x, k)

        setattr_("_inv", inv)
        setattr_("_pow", pw)

    def _build_tables(self, slow_mul):
        p, m, n = self.p, self.m, self.size - 1
        g = self.generator
        block = min(n, 2048)
        first = []
        cur = 1
        for _ in range(block):
            first.append(cur)
            cur = slow_mul(cur, g)
        pw_vec = np.array([p**j for j in range(m)], dtype=np.int64)
        rows = np.array([_digits(c, p, m) for c in first], dtype=np.int64)
        step = np.array([_digits(slow_mul(cur, p**j), p, m) for j in range(m)], dtype=np.int64)
        # rows @ step gives digits of g^block * (row element)
        codes = np.empty(n, dtype=np.int64)
        pos = 0
        while pos < n:
            take = min(block, n - pos)
            codes[pos:pos + take] = rows[:take] @ pw_vec
            pos += take
            rows = (rows @ step) % p
        log = np.zeros(self.size, dtype=np.int64)
        log[codes] = np.arange(n, dtype=np.int64)
        if len(np.unique(codes)) != n:
            raise NoIrreducibleFound(f"generator walk of F_{p}^{m} is not a permutation")
        exp2 = array("q", np.concatenate([codes, codes]).tobytes())
        logt = array("q", log.tobytes())
        setattr_ = functools.partial(object.__setattr__, self)
        setattr_("has_tables", True)
        setattr_("_exp", exp2)
        setattr_("_log", logt)

        def mul(x: int, y: int) -> int:
            if x and y:
                return exp2[logt[x] + logt[y]]
            return 0

        def inv(x: int) -> int:
            return exp2[n - logt[x]]

        def pw(x: int, k: int) -> int:
            if x == 0:
                return 0 if k > 0 else 1
            return exp2[logt[x] * k % n]

        setattr_("mul", mul)
        setattr_("_inv", inv)
        setattr_("_pow", pw)
        if p == 2:
            xor = lambda x, y: x ^ y
            setattr_("add", xor)
            setattr_("sub", xor)
            setattr_("neg", lambda x: x)
            return
        # Zech logarithms: zech[k] = log(1 + g^k), -1 when 1 + g^k = 0
        plus_one = np.where(codes % p == p - 1, codes - (p - 1), codes + 1)
        zech_np = np.where(plus_one == 0, -1, log[plus_one])
        zech = array("q", zech_np.tobytes())
        half = n // 2

        def add(x: int, y: int) -> int:
            if not x:
                return y
            if not y:
                return x
            lx = logt[x]
            z = zech[(logt[y] - lx) % n]
            if z < 0:
                return 0
            return exp2[lx + z]

        def neg(x: int) -> int:
            if not x:
                return 0
            return exp2[logt[x] + half]

        setattr_("add", add)
        setattr_("neg", neg)
        setattr_("sub", lambda x, y: add(x, neg(y)) if y else x)

    # -- public helpers on codes
    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv(x)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            return self._pow(self.inv(x), -k)
        return self._pow(x, k)

    def digits(self, x: int) -> tuple[int, ...]:
        return _digits(x, self.p, self.m)

    def from_digits(self, ds) -> int:
        return _from_digits([c % self.p for c in ds], self.p)

    def lex_key(self, x: int) -> tuple[int, ...]:
        return self.digits(x)

    def order(self, x: int) -> int:
        if x == 0:
            raise ZeroElement("zero has no multiplicative order")
        return _order_from_pow(self._pow, x, self.size - 1)

    def frobenius(self, x: int, times: int = 1) -> int:
        return self._pow(x, self.p ** (times % self.m))

    def elem(self, code: int) -> "FFElem":
        return FFElem(self, code)

    def elements(self):
        return range(self.size)

    def __repr__(self) -> str:
        return f"F_{self.p}^{self.m}"


@dataclass(frozen=True)
class FFElem:
    """A field element: a code together with its field."""

    field: FieldDesc
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def _check(self, other) -> "FFElem":
        if not isinstance(other, FFElem):
            return FFElem(self.field, int(other) % self.field.p)
        if other.field != self.field:
            raise FieldMismatch(f"{other.field} vs {self.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FFElem(self.field, self.field.add(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FFElem(self.field, self.field.sub(self.code, other.code))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        other = self._check(other)
        return FFElem(self.field, self.field.mul(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return FFElem(self.field, self.field.div(self.code, other.code))

    def __pow__(self, k: int):
        return FFElem(self.field, self.field.pow(self.code, k))

    def inverse(self) -> "FFElem":
        return FFElem(self.field, self.field.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"FFElem({self.field!r}, {list(self.coeffs)})"


def field_arithmetic(x: FFElem, y: FFElem | None, op: str, k: int = 0) -> FFElem:
    """Dispatch form of the element operations: op in {add, mul, inv, pow}."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x**k
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# construction


@functools.lru_cache(maxsize=None)
def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    # a zero constant term makes x a factor, so those candidates are skipped
    ranges = [range(0 if m == 1 else 1, p)]
    ranges += [range(p)] * (m - 1)
    for low in itertools.product(*ranges):
        cand = list(low) + [1]
        if is_irreducible_poly(cand, p):
            return tuple(cand)
    raise NoIrreducibleFound(f"no irreducible polynomial of degree {m} over F_{p}")


def _smallest_generator(p: int, m: int, modulus: tuple[int, ...]) -> int:
    n = p**m - 1
    if n == 1:
        return 1
    mul = _make_slow_mul(p, m, modulus)
    primes = [ell for ell, _ in _factor(n)]
    for code in _lex_codes(p, m):
        if code == 0:
            continue
        if all(_slow_pow(mul, code, n // ell) != 1 for ell in primes):
            return code
    raise NoIrreducibleFound(f"no generator found for F_{p}^{m}")


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int) -> FieldDesc:
    """The field of p^m elements; same (p, m) always gives the same object."""
    if not isprime(p):
        raise NonPrime(f"p = {p} is not prime")
    if m < 1 or m > MAX_DEGREE:
        raise DegreeTooLarge(f"degree m = {m} outside 1..{MAX_DEGREE}")
    modulus = _smallest_irreducible(p, m)
    gen = _smallest_generator(p, m, modulus)
    return FieldDesc(p, m, modulus, gen)


def multiplicative_order(x: FFElem) -> int:
    return x.field.order(x.code)


def int_order(x: int, n: int) -> int:
    """Multiplicative order of x modulo n, with ord(x mod 1) = 1."""
    if n == 1:
        return 1
    if math.gcd(x, n) != 1:
        raise ValueError(f"{x} is not a unit mod {n}")
    from sympy.ntheory import n_order

    return int(n_order(x % n, n))


def root_of_unity(F: FieldDesc, d: int) -> FFElem:
    """generator^((p^m - 1)/d), an element of exact order d."""
    n = F.size - 1
    if d < 1 or n % d:
        raise OrderNotAvailable(f"{d} does not divide |{F!r}^x| = {n}")
    return F.elem(F.pow(F.generator, n // d))


def discrete_log(x: FFElem) -> int:
    F = x.field
    if x.code == 0:
        raise ZeroElement("log of zero")
    if F.size > LOG_LIMIT:
        raise ResourceError(f"discrete log in {F!r} exceeds desk bound")
    return _dlog(F, x.code)


def _dlog(F: FieldDesc, code: int) -> int:
    n = F.size - 1
    if F.m == 1 and F.p == 2:
        return 0
    if F.has_tables:
        return F._log[code]
    baby, step, giant_factor = _bsgs_table(F)
    y = code
    for j in range(step + 1):
        i = baby.get(y)
        if i is not None:
            return (j * step + i) % n
        y = F.mul(y, giant_factor)
    raise ZeroElement("element not in the cyclic group; corrupted field?")


@functools.lru_cache(maxsize=None)
def _bsgs_table(F: FieldDesc):
    n = F.size - 1
    step = math.isqrt(n) + 1
    baby = {}
    cur = 1
    for i in range(step):
        baby.setdefault(cur, i)
        cur = F.mul(cur, F.generator)
    return baby, step, F.inv(cur)


# ---------------------------------------------------------------------------
# embeddings


def prime_to_p(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def tilde_degree(p: int, a: int, f: int) -> int:
    fp = prime_to_p(f, p)
    return math.lcm(a * f, int_order(p, fp))


def tilde_field(p: int, a: int, f: int) -> FieldDesc:
    """l~ = l(mu_{f'}): degree lcm(a f, ord(p mod f')) over F_p."""
    if a < 1 or f < 1:
        raise ValueError("a and f must be positive")
    return make_field(p, tilde_degree(p, a, f))


# polynomial helpers with coefficients in an arbitrary FieldDesc (codes)


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(F: FieldDesc, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mul, add = F.mul, F.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _fp_trim(out)


def _fp_mod(F: FieldDesc, a, b):
    a = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    for k in range(len(a) - 1, db - 1, -1):
        c = F.mul(a[k], inv_lead)
        if c:
            for j in range(db + 1):
                a[k - db + j] = F.sub(a[k - db + j], F.mul(c, b[j]))
    return _fp_trim(a[:db])


def _fp_gcd(F: FieldDesc, a, b):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(F, a, b)
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def _fp_powmod(F: FieldDesc, base, e: int, mod):
    result = [1]
    base = _fp_mod(F, base, mod)
    while e:
        if e & 1:
            result = _fp_mod(F, _fp_mul(F, result, base), mod)
        e >>= 1
        if e:
            base = _fp_mod(F, _fp_mul(F, base, base), mod)
    return result


def _fp_add(F: FieldDesc, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _fp_trim([F.add(x, y) for x, y in zip(a, b)])


def _fp_quo(F: FieldDesc, a, b):
    """Exact quotient a / b."""
    a = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = F.mul(a[k], inv_lead)
        q[k - db] = c
        if c:
            for j in range(db + 1):
                a[k - db + j] = F.sub(a[k - db + j], F.mul(c, b[j]))
    return _fp_trim(q)


def find_root(F: FieldDesc, poly) -> int:
    """Some root in F of a polynomial (codes, low first) that splits into distinct linear factors over F."""
    f = _fp_trim([c for c in poly])
    inv = F.inv(f[-1])
    f = [F.mul(c, inv) for c in f]
    delta_exp = 0
    while len(f) > 2:
        delta = F.pow(F.generator, delta_exp)
        delta_exp += 1
        if F.p == 2:
            # absolute trace of delta * x, reduced mod f
            t = [0, delta]
            acc = list(t)
            for _ in range(F.m - 1):
                t = _fp_mod(F, _fp_mul(F, t, t), f)
                acc = _fp_add(F, acc, t)
            g = _fp_gcd(F, f, acc)
        else:
            h = _fp_powmod(F, [delta, 1], (F.size - 1) // 2, f)
            h = _fp_add(F, h, [F.neg(1)])
            g = _fp_gcd(F, f, h)
        if 1 < len(g) < len(f):
            f = g if len(g) <= len(f) - len(g) + 1 else _fp_quo(F, f, g)
    return F.neg(f[0])


@functools.lru_cache(maxsize=None)
def embedding_image(sub: FieldDesc, sup: FieldDesc) -> int:
    """Image of x (the class of the variable) under the canonical embedding sub -> sup.

    The canonical choice is the lexicographically smallest root of sub's
    modulus in sup.
    """
    if sub.p != sup.p or sup.m % sub.m:
        raise NotASubfield(f"{sub!r} is not a subfield of {sup!r}")
    if sub.m == 1:
        return 0
    root = find_root(sup, list(sub.modulus))
    roots = [root]
    cur = root
    for _ in range(sub.m - 1):
        cur = sup.pow(cur, sup.p)
        roots.append(cur)
    return min(roots, key=sup.lex_key)


def _apply_image(x: int, sub: FieldDesc, sup: FieldDesc, alpha: int) -> int:
    if sub.m == 1:
        return x
    acc = 0
    for c in reversed(sub.digits(x)):
        acc = sup.add(sup.mul(acc, alpha), c)
    return acc


def embed(x: FFElem, sub: FieldDesc, sup: FieldDesc) -> FFElem:
    if x.field != sub:
        raise FieldMismatch(f"element of {x.field!r}, expected {sub!r}")
    alpha = embedding_image(sub, sup)
    return sup.elem(_apply_image(x.code, sub, sup, alpha))


def embed_code(x: int, sub: FieldDesc, sup: FieldDesc) -> int:
    return _apply_image(x, sub, sup, embedding_image(sub, sup))


@dataclass(frozen=True)
class FieldTower:
    """A chain k = F_0 ⊂ F_1 ⊂ ... with embeddings fixed in one pass.

    Each step F_i -> F_{i+1} is the smallest root of F_i's modulus whose
    induced embedding F_0 -> F_{i+1} agrees with the canonical direct one,
    so the composites along the chain equal the direct embeddings from the
    bottom field.
    """

    fields: tuple[FieldDesc, ...]
    images: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        images = []
        bottom = self.fields[0]
        for i in range(len(self.fields) - 1):
            sub, sup = self.fields[i], self.fields[i + 1]
            if sup.m % sub.m or sub.p != sup.p:
                raise NotASubfield(f"{sub!r} is not a subfield of {sup!r}")
            if sub.m == 1:
                images.append(0)
                continue
            base = embedding_image(sub, sup)
            roots = [base]
            for _ in range(sub.m - 1):
                roots.append(sup.pow(roots[-1], sup.p))
            roots.sort(key=sup.lex_key)
            if i == 0:
                images.append(roots[0])
                continue
            # composite bottom -> sub -> sup must equal the direct bottom -> sup
            target = embedding_image(bottom, sup) if bottom.m > 1 else 0
            x_in_sub = self._composite_image(images, i)
            chosen = None
            for r in roots:
                if bottom.m == 1 or _apply_image(x_in_sub, sub, sup, r) == target:
                    chosen = r
                    break
            if chosen is None:
                raise NotASubfield("no compatible root found")
            images.append(chosen)
        object.__setattr__(self, "images", tuple(images))

    def _composite_image(self, images, upto: int) -> int:
        """Image of the bottom field's x in fields[upto]."""
        bottom = self.fields[0]
        if bottom.m == 1:
            return 0
        x = bottom.p  # code of the variable x
        for i in range(upto):
            x = _apply_image(x, self.fields[i], self.fields[i + 1], images[i])
        return x

    def embed(self, x: FFElem, i: int, j: int) -> FFElem:
        """Map an element of fields[i] into fields[j] (i <= j) along the chain."""
        if x.field != self.fields[i]:
            raise FieldMismatch("element not in the source field")
        code = x.code
        for k in range(i, j):
            code = _apply_image(code, self.fields[k], self.fields[k + 1], self.images[k])
        return self.fields[j].elem(code)


def tilde_tower(p: int, a: int, f: int) -> FieldTower:
    """The tower k ⊂ l ⊂ l~ for q = p^a and [l:k] = f."""
    return FieldTower((make_field(p, a), make_field(p, a * f), tilde_field(p, a, f)))
