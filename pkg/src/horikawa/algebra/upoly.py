"""Dense univariate polynomials over a field.

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.  Every function takes the
coefficient field ``F`` (see :mod:`horikawa.algebra.fields`) explicitly.
"""

from __future__ import annotations

from math import gcd as igcd


def trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p) -> int:
    return len(p) - 1


def const(F, c):
    return [] if F.is_zero(c) else [c]


def add(F, p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F, p, q):
    out = list(p) + [F.zero] * max(0, len(q) - len(p))
    for i, c in enumerate(q):
        out[i] = F.sub(out[i], c)
    return trim(out)


def neg(F, p):
    return [F.neg(c) for c in p]


def scale(F, p, c):
    if F.is_zero(c):
        return []
    return trim([F.mul(a, c) for a in p])


def mul(F, p, q):
    if not p or not q:
        return []
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if F.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def shift(p, n: int):
    return [0] * n + list(p) if p else []


def divmod_(F, p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    inv_lc = F.inv(q[-1])
    if len(r) - 1 < dq:
        return [], r
    quo = [F.zero] * (len(r) - dq)
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv_lc)
        quo[i - dq] = c
        for j in range(dq + 1):
            r[i - dq + j] = F.sub(r[i - dq + j], F.mul(c, q[j]))
    return trim(quo), trim(r[:dq])


def rem(F, p, q):
    return divmod_(F, p, q)[1]


def exact_div(F, p, q):
    quo, r = divmod_(F, p, q)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return quo


def monic(F, p):
    if not p:
        return []
    return scale(F, p, F.inv(p[-1]))


def gcd(F, p, q):
    while q:
        p, q = q, rem(F, p, q)
    return monic(F, p)


def pow_(F, p, e: int):
    out = [F.one]
    base = p
    while e:
        if e & 1:
            out = mul(F, out, base)
        base = mul(F, base, base)
        e >>= 1
    return out


def powmod(F, p, e: int, m):
    out = [F.one]
    base = rem(F, p, m)
    while e:
        if e & 1:
            out = rem(F, mul(F, out, base), m)
        base = rem(F, mul(F, base, base), m)
        e >>= 1
    return rem(F, out, m)


def deriv(F, p):
    return trim([F.mul(F.from_int(i), p[i]) for i in range(1, len(p))])


def evaluate(F, p, x):
    acc = F.zero
    for c in reversed(p):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pth_root(F, p):
    """Square root of a polynomial in X^2 over a perfect field of char 2."""
    if any(not F.is_zero(c) for c in p[1::2]):
        raise ArithmeticError("not a polynomial in X^2")
    return trim([F.sqrt(c) for c in p[0::2]])


def sqf_decomposition(F, p):
    """Squarefree decomposition: list of (factor, multiplicity), factors monic.

    Valid in characteristic 0 and 2 (Musser's algorithm with p-th root
    extraction for the part killed by differentiation).
    """
    p = monic(F, p)
    if len(p) <= 1:
        return []
    out: dict[int, list] = {}
    _sqf_into(F, p, 1, out)
    return sorted(((f, e) for e, f in out.items()), key=lambda fe: fe[1])


def _sqf_into(F, p, scale_e, out):
    dp = deriv(F, p)
    c = gcd(F, p, dp) if dp else monic(F, p)
    w = exact_div(F, p, c) if dp else [F.one]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = exact_div(F, w, y)
        if len(z) > 1:
            _put(F, out, i * scale_e, z)
        i += 1
        w = y
        c = exact_div(F, c, y)
    if len(c) > 1:
        if F.characteristic != 2:
            raise ArithmeticError("residual p-th power in characteristic 0")
        _sqf_into(F, pth_root(F, c), 2 * scale_e, out)


def _put(F, out, e, f):
    out[e] = mul(F, out[e], f) if e in out else f


def squarefree_part(F, p):
    """Product of the distinct monic irreducible factors of p."""
    r = [F.one]
    for f, _ in sqf_decomposition(F, p):
        r = mul(F, r, f)
    return r


def distinct_degree_degrees(F, p) -> list[int]:
    """Degrees of the irreducible factors of a squarefree p over a finite field."""
    q = F.order
    f = monic(F, p)
    x = [F.zero, F.one]
    h = x
    i = 0
    degs = []
    while len(f) > 1:
        i += 1
        if 2 * i > len(f) - 1:
            degs.append(len(f) - 1)
            break
        h = powmod(F, h, q, f)
        g = gcd(F, sub(F, h, x), f)
        if len(g) > 1:
            degs.extend([i] * ((len(g) - 1) // i))
            f = exact_div(F, f, g)
            h = rem(F, h, f)
    return degs


def splitting_degree(F, p) -> int:
    """Least r such that p splits into linear factors over the degree-r extension."""
    r = 1
    for f, _ in sqf_decomposition(F, p):
        for e in distinct_degree_degrees(F, f):
            r = r * e // igcd(r, e)
    return r


def roots_in_field(F, p) -> list:
    """Distinct roots of p lying in F (a finite field of characteristic 2)."""
    if F.characteristic != 2:
        raise NotImplementedError("root finding is only provided over F_{2^k}")
    p = trim([c for c in p])
    if not p:
        raise ValueError("zero polynomial has every element as a root")
    f = squarefree_part(F, p)
    if len(f) <= 1:
        return []
    x = [F.zero, F.one]
    # keep the factors that split over F: gcd(f, X^q - X)
    h = powmod(F, x, F.order, f)
    f = gcd(F, f, sub(F, h, x))
    out: list = []
    _split_roots(F, f, out)
    return sorted(out)


def _split_roots(F, f, out):
    if len(f) <= 1:
        return
    if len(f) == 2:
        out.append(F.div(F.neg(f[0]), f[1]))
        return
    beta = 1
    for _ in range(F.k):
        # trace map T(X) = sum (beta X)^(2^i) mod f separates roots by Tr(beta r)
        bx = [F.zero, beta]
        t, cur = [], rem(F, bx, f)
        for _ in range(F.k):
            t = add(F, t, cur)
            cur = rem(F, mul(F, cur, cur), f)
        g = gcd(F, f, t)
        if 1 < len(g) < len(f):
            _split_roots(F, g, out)
            _split_roots(F, exact_div(F, f, g), out)
            return
        beta <<= 1
    raise ArithmeticError("failed to split a polynomial into linear factors")
