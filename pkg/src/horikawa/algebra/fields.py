"""Exact coefficient fields: F_{2^k} and the rationals.

Elements of ``GF2k(k)`` are plain ints in ``range(2**k)``; bit ``i`` is the
coefficient of ``alpha**i`` where ``alpha`` is the class of ``X`` modulo the
field's fixed modulus.  The modulus is the lexicographically least monic
irreducible of degree ``k`` over F_2, so element codes are reproducible.

Elements of ``Rationals()`` are ``fractions.Fraction`` instances.
"""

from __future__ import annotations

import functools
from fractions import Fraction

# Use log/antilog tables up to this degree, carry-less multiplication above.
_TABLE_LIMIT = 16


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _gf2_powmod(a: int, e: int, m: int) -> int:
    r = 1
    a = _gf2_mod(a, m)
    while e:
        if e & 1:
            r = _gf2_mod(_clmul(r, a), m)
        a = _gf2_mod(_clmul(a, a), m)
        e >>= 1
    return r


def is_irreducible_gf2(m: int) -> bool:
    """Rabin's test for a binary polynomial encoded as an int."""
    k = m.bit_length() - 1
    if k < 1:
        return False
    if k == 1:
        return True
    # X^(2^k) == X mod m, and gcd(X^(2^(k/q)) - X, m) == 1 for prime q | k
    x = 0b10
    h = x
    for _ in range(k):
        h = _gf2_mod(_clmul(h, h), m)
    if h != x:
        return False
    for q in _prime_factors(k):
        h = x
        for _ in range(k // q):
            h = _gf2_mod(_clmul(h, h), m)
        if _gf2_gcd(m, h ^ x) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@functools.lru_cache(maxsize=None)
def least_irreducible(k: int) -> int:
    """Lexicographically least monic irreducible binary polynomial of degree k."""
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    for m in range(1 << k, 1 << (k + 1)):
        if is_irreducible_gf2(m):
            return m
    raise AssertionError("unreachable")  # pragma: no cover


class GF2k:
    """The finite field with ``2**k`` elements."""

    characteristic = 2

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.k = k
        self.order = 1 << k
        self.modulus = least_irreducible(k)
        self.zero = 0
        self.one = 1
        self._exp = self._log = None
        if k <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"GF2k({self.k})"

    def __eq__(self, other):
        return isinstance(other, GF2k) and other.k == self.k

    def __hash__(self):
        return hash(("GF2k", self.k))

    @property
    def label(self) -> str:
        return f"2^{self.k}"

    def _build_tables(self):
        n = self.order - 1
        g = self._find_generator()
        exp = [0] * (2 * n + 1)
        log = [0] * self.order
        a = 1
        for i in range(n):
            exp[i] = a
            log[a] = i
            a = _gf2_mod(_clmul(a, g), self.modulus)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log
        self.generator = g

    def _find_generator(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        qs = _prime_factors(n)
        for g in range(2, self.order):
            if all(_gf2_powmod(g, n // q, self.modulus) != 1 for q in qs):
                return g
        raise AssertionError("no generator")  # pragma: no cover

    # arithmetic -------------------------------------------------------
    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return _gf2_mod(_clmul(a, b), self.modulus)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in " + repr(self))
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if not a:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return _gf2_powmod(a, e, self.modulus)

    def sqrt(self, a):
        # Frobenius is an automorphism; its inverse is the (k-1)-fold square.
        for _ in range(self.k - 1):
            a = self.mul(a, a)
        return a

    def frobenius(self, a, times: int = 1):
        for _ in range(times):
            a = self.mul(a, a)
        return a

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        """Image of the integer ``n`` under Z -> F_{2^k}."""
        return n & 1

    def element(self, code: int):
        if not 0 <= code < self.order:
            raise ValueError(f"{code} is not an element code of F_{self.order}")
        return code

    def elements(self):
        return range(self.order)

    def trace(self, a) -> int:
        t, b = 0, a
        for _ in range(self.k):
            t ^= b
            b = self.mul(b, b)
        return t

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        return self.element(int(s))

    def to_json(self, a):
        return a


class Rationals:
    """The field Q with exact ``Fraction`` arithmetic."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)
    label = "Q"

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by 0 in Q")
        return Fraction(a) / b

    def pow(self, a, e: int):
        return Fraction(a) ** e

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return Fraction(n)

    def element(self, v):
        return Fraction(v)

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        return Fraction(s)

    def to_json(self, a):
        return str(a) if a.denominator != 1 else int(a)


QQ = Rationals()


@functools.lru_cache(maxsize=None)
def gf(k: int) -> GF2k:
    return GF2k(k)


def parse_field(spec: str):
    """Parse ``"Q"`` or ``"2^k"`` (also ``"GF(2^k)"``, ``"F4"``)."""
    s = spec.strip().upper().replace("GF(", "").replace(")", "")
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("2^"):
        return gf(int(s[2:]))
    if s.startswith("F") and s[1:].isdigit():
        n = int(s[1:])
        k = n.bit_length() - 1
        if n != 1 << k or k < 1:
            raise ValueError(f"F{n}: order must be a power of 2")
        return gf(k)
    raise ValueError(f"unrecognised field spec {spec!r}; use 'Q' or '2^k'")


def smallest_field_for(count: int) -> GF2k:
    """Smallest F_{2^k} with at least ``count`` elements."""
    k = 1
    while (1 << k) < count:
        k += 1
    return gf(k)


@functools.lru_cache(maxsize=None)
def embedding(small: GF2k, big: GF2k) -> tuple[int, ...]:
    """Images of ``alpha**i`` (i < small.k) under a fixed embedding small -> big.

    The image of ``alpha`` is the least root (as an int code) of the small
    field's modulus inside the big field.
    """
    if big.k % small.k:
        raise ValueError(f"F_{small.order} does not embed in F_{big.order}")
    if small.k == big.k:
        return tuple(1 << i for i in range(small.k))
    from .upoly import roots_in_field  # local: upoly depends on this module

    mod = [(small.modulus >> i) & 1 for i in range(small.k + 1)]
    r = min(roots_in_field(big, mod))
    powers, p = [], 1
    for _ in range(small.k):
        powers.append(p)
        p = big.mul(p, r)
    return tuple(powers)


def embed(small: GF2k, big: GF2k, a: int) -> int:
    powers = embedding(small, big)
    out = 0
    i = 0
    while a:
        if a & 1:
            out ^= powers[i]
        a >>= 1
        i += 1
    return out


def embedder(small: GF2k, big: GF2k):
    """Return a callable mapping codes of ``small`` to codes of ``big``."""
    if small == big:
        return lambda a: a
    table = [embed(small, big, a) for a in range(small.order)]
    return table.__getitem__


def restrict(small: GF2k, big: GF2k, b: int):
    """Inverse of the embedding on its image; ``None`` if ``b`` is not in it."""
    if small == big:
        return b
    table = {embed(small, big, a): a for a in range(small.order)}
    return table.get(b)
