"""Finite fields F_q (q = p^e, p odd) and the quadratic extension E = F_q(sqrt(delta)).

Elements of F_q are the integers 0..q-1; the base-p digits of an index are the
coefficients (constant term first) of a polynomial reduced modulo a fixed
irreducible. Elements of E are the integers u + q*v standing for u + v*sqrt(delta).
"""

from __future__ import annotations

from functools import cached_property
from itertools import product

import numpy as np

from .errors import (
    CapExceeded,
    DeltaIsSquare,
    DivisionByZero,
    EvenCharacteristic,
    NotPrime,
)

DEFAULT_CAP = 2**14
# add/mul tables are materialized below this order
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e; raises NotPrime if q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p, e = fs[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# -- polynomial helpers over F_p (coefficient lists, constant term first) --

def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds, p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    a = [c % p for c in a[:dm]]
    return a + [0] * (dm - len(a))


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _is_irreducible(m: list[int], p: int) -> bool:
    e = len(m) - 1
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            f = list(low) + [1]
            if not any(_poly_rem(m, f, p)):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Monic irreducible of degree e whose low coefficients, read as a base-p
    integer (constant term least significant), are smallest."""
    for idx in range(p**e):
        m = _digits(idx, p, e) + [1]
        if _is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")


class FieldTable:
    """Arithmetic and discrete-log tables for F_q.

    The object is immutable after construction.
    """

    def __init__(self, p: int, e: int, modulus: list[int]):
        self.p = p
        self.e = e
        self.q = q = p**e
        self.modulus = tuple(modulus)
        self.one = 1
        self.minus_one = p - 1

        self._pows = [p**i for i in range(e)]
        self.g = self._find_generator()
        exp = [0] * (q - 1)
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self.poly_mul(x, self.g)
        assert x == 1
        self.exp_table = exp
        self.log_table = log

        self._add_t = self._mul_t = None
        if q <= TABLE_LIMIT:
            self._add_t = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]
            self._mul_t = [[self._mul_log(a, b) for b in range(q)] for a in range(q)]
        self._neg = [self._neg_digits(a) for a in range(q)]
        self._inv = [0] + [exp[(-log[a]) % (q - 1)] for a in range(1, q)]

    # -- construction-time polynomial arithmetic (also used as an oracle) --
    def poly_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        pa = _digits(a, self.p, self.e)
        pb = _digits(b, self.p, self.e)
        r = _poly_rem(_poly_mul(pa, pb, self.p), list(self.modulus), self.p)
        return _undigits(r, self.p)

    def poly_pow(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self.poly_mul(result, base)
            base = self.poly_mul(base, base)
            n >>= 1
        return result

    def _find_generator(self) -> int:
        n = self.q - 1
        rs = prime_factors(n)
        for x in range(2 if self.q > 2 else 1, self.q):
            if all(self.poly_pow(x, n // r) != 1 for r in rs):
                return x
        if self.q == 2:
            return 1
        raise AssertionError("no generator")

    def _add_digits(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        for w in self._pows:
            out += ((a // w + b // w) % p) * w
        return out

    def _neg_digits(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        return sum(((-(a // w)) % p) * w for w in self._pows)

    def _mul_log(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    # -- public arithmetic --
    def add(self, a: int, b: int) -> int:
        if self._add_t is not None:
            return self._add_t[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if self._mul_t is not None:
            return self._mul_t[a][b]
        return self._mul_log(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZero("negative power of 0")
            return 1 if n == 0 else 0
        return self.exp_table[(self.log_table[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def is_square(self, a: int) -> bool:
        return a == 0 or self.log_table[a] % 2 == 0

    def sqrt(self, a: int) -> int | None:
        if a == 0:
            return 0
        k = self.log_table[a]
        if k % 2:
            return None
        return self.exp_table[k // 2]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def abs_trace(self, a: int) -> int:
        """Absolute trace F_q -> F_p, returned as an integer in 0..p-1."""
        t, x = 0, a
        for _ in range(self.e):
            t = self.add(t, x)
            x = self.frobenius(x)
        assert t < self.p
        return t

    @cached_property
    def abs_trace_table(self) -> np.ndarray:
        return np.array([self.abs_trace(a) for a in range(self.q)], dtype=np.int64)

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def units(self) -> range:
        return range(1, self.q)

    def info(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "q": self.q,
            "modulus": list(self.modulus),
            "g": self.g,
            "delta": find_nonsquare(self),
        }

    def __repr__(self):
        return f"FieldTable(p={self.p}, e={self.e})"


def build_field(p: int, e: int = 1, cap: int = DEFAULT_CAP) -> FieldTable:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if e < 1:
        raise ValueError("extension degree must be positive")
    if p**e > cap:
        raise CapExceeded(f"q = {p}^{e} exceeds cap {cap}")
    return FieldTable(p, e, smallest_irreducible(p, e))


def build_field_q(q: int, cap: int = DEFAULT_CAP) -> FieldTable:
    if q % 2 == 0:
        raise EvenCharacteristic("characteristic 2 is not supported")
    p, e = prime_power(q)
    return build_field(p, e, cap)


def find_nonsquare(f: FieldTable) -> int:
    # a generator of F_q^x is a nonsquare whenever q is odd
    return f.g


class ExtFieldTable:
    """E = F(sqrt(delta)) with elements u + v*sqrt(delta) encoded as u + q*v."""

    def __init__(self, base: FieldTable, delta: int):
        f = base
        if delta == 0 or f.is_square(delta):
            raise DeltaIsSquare(f"{delta} is a square in F_{f.q}")
        self.base = f
        self.delta = delta
        q = f.q
        self.q = q
        self.order = q * q
        self.sqrt_delta = q  # u = 0, v = 1

        self.h = self._find_generator()
        n = self.order - 1
        exp = np.zeros(n, dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self.mul(x, self.h)
        assert x == 1
        self.exp_table = exp
        self.log_table = log

        us = np.arange(self.order) % q
        vs = np.arange(self.order) // q
        self.norm_table = np.array(
            [f.sub(f.mul(u, u), f.mul(delta, f.mul(v, v))) for u, v in zip(us, vs)],
            dtype=np.int64,
        )
        self.trace_table = np.array([f.add(u, u) for u in us], dtype=np.int64)

    def split(self, z: int) -> tuple[int, int]:
        return z % self.q, z // self.q

    def make(self, u: int, v: int) -> int:
        return u + self.q * v

    def add(self, z: int, w: int) -> int:
        f = self.base
        (u1, v1), (u2, v2) = self.split(z), self.split(w)
        return self.make(f.add(u1, u2), f.add(v1, v2))

    def neg(self, z: int) -> int:
        u, v = self.split(z)
        return self.make(self.base.neg(u), self.base.neg(v))

    def sub(self, z: int, w: int) -> int:
        return self.add(z, self.neg(w))

    def mul(self, z: int, w: int) -> int:
        f = self.base
        (u1, v1), (u2, v2) = self.split(z), self.split(w)
        u = f.add(f.mul(u1, u2), f.mul(self.delta, f.mul(v1, v2)))
        v = f.add(f.mul(u1, v2), f.mul(u2, v1))
        return self.make(u, v)

    def pow(self, z: int, n: int) -> int:
        if n < 0:
            z, n = self.inv(z), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, z)
            z = self.mul(z, z)
            n >>= 1
        return result

    def conj(self, z: int) -> int:
        u, v = self.split(z)
        return self.make(u, self.base.neg(v))

    def norm(self, z: int) -> int:
        u, v = self.split(z)
        f = self.base
        return f.sub(f.mul(u, u), f.mul(self.delta, f.mul(v, v)))

    def trace(self, z: int) -> int:
        u, _ = self.split(z)
        return self.base.add(u, u)

    def inv(self, z: int) -> int:
        nz = self.norm(z)
        if nz == 0:
            raise DivisionByZero("inverse of 0 in E")
        c = self.base.inv(nz)
        u, v = self.split(self.conj(z))
        return self.make(self.base.mul(u, c), self.base.mul(v, c))

    def div(self, z: int, w: int) -> int:
        return self.mul(z, self.inv(w))

    def scale(self, a: int, z: int) -> int:
        """a*z for a in F."""
        u, v = self.split(z)
        return self.make(self.base.mul(a, u), self.base.mul(a, v))

    def _find_generator(self) -> int:
        n = self.order - 1
        rs = prime_factors(n)
        for z in range(2, self.order):
            if self.norm(z) == 0:
                continue
            if all(self.pow(z, n // r) != 1 for r in rs):
                return z
        raise AssertionError("no generator of E^x")

    def norm_one(self) -> list[int]:
        """The kernel of the norm map, in increasing index order."""
        return [int(z) for z in np.nonzero(self.norm_table == 1)[0]]

    def __repr__(self):
        return f"ExtFieldTable(q={self.q}, delta={self.delta})"


def build_ext(f: FieldTable, delta: int | None = None) -> ExtFieldTable:
    if delta is None:
        delta = find_nonsquare(f)
    return ExtFieldTable(f, delta)
