"""Sparse bivariate polynomials over F_{2^k} or Q.

``ChartPolynomial`` stores ``{(i, j): c}`` for ``c * u**i * v**j`` where
``(u, v)`` are the chart's variable names.  For gcd, division and
resultants a polynomial is viewed in ``k[v][u]`` (a list of univariate
coefficient polynomials in ``v`` indexed by the power of ``u``).
"""

from __future__ import annotations

import re
from typing import Iterable

from . import upoly as U


class ChartPolynomial:
    __slots__ = ("field", "variables", "terms")

    def __init__(self, field, variables: tuple[str, str], terms=None):
        self.field = field
        self.variables = tuple(variables)
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent in a polynomial")
            if not field.is_zero(c):
                clean[(i, j)] = c
        self.terms = clean

    # construction ------------------------------------------------------
    @classmethod
    def constant(cls, field, variables, c):
        return cls(field, variables, {(0, 0): c})

    @classmethod
    def one(cls, field, variables):
        return cls(field, variables, {(0, 0): field.one})

    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables, {})

    @classmethod
    def monomial(cls, field, variables, i, j, c=None):
        return cls(field, variables, {(i, j): field.one if c is None else c})

    @classmethod
    def gens(cls, field, variables):
        return (cls.monomial(field, variables, 1, 0), cls.monomial(field, variables, 0, 1))

    @classmethod
    def from_univariate(cls, field, variables, coeffs, which: int = 1):
        if which == 0:
            return cls(field, variables, {(i, 0): c for i, c in enumerate(coeffs)})
        return cls(field, variables, {(0, j): c for j, c in enumerate(coeffs)})

    def _new(self, terms):
        out = object.__new__(ChartPolynomial)
        out.field = self.field
        out.variables = self.variables
        out.terms = terms
        return out

    def _check(self, other):
        if not isinstance(other, ChartPolynomial):
            raise TypeError(f"expected ChartPolynomial, got {type(other).__name__}")
        if other.field != self.field or other.variables != self.variables:
            raise ValueError(
                f"incompatible polynomials: {self.field!r}{self.variables} vs "
                f"{other.field!r}{other.variables}"
            )

    def _coerce(self, other):
        if isinstance(other, ChartPolynomial):
            self._check(other)
            return other
        return ChartPolynomial.constant(self.field, self.variables, self.field.element(other))

    # ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out.get(m, F.zero), c)
            if F.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: self.field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, ChartPolynomial):
            c = F.element(other)
            if F.is_zero(c):
                return self._new({})
            return self._new({m: F.mul(a, c) for m, a in self.terms.items()})
        self._check(other)
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = F.add(out.get(m, F.zero), F.mul(a, b))
        return self._new({m: c for m, c in out.items() if not F.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = ChartPolynomial.one(self.field, self.variables)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ChartPolynomial):
            return (
                self.field == other.field
                and self.variables == other.variables
                and self.terms == other.terms
            )
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"ChartPolynomial({self.field.label}, {self.variables}, {str(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    # queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def degree(self, which: int) -> int:
        if not self.terms:
            return -1
        return max(m[which] for m in self.terms)

    def valuation(self, which: int) -> int:
        """Order of vanishing along ``{var_which = 0}``."""
        if not self.terms:
            raise ValueError("valuation of the zero polynomial")
        return min(m[which] for m in self.terms)

    def weighted_degree(self, wu: int, wv: int) -> int:
        return max(wu * i + wv * j for i, j in self.terms)

    def leading(self):
        """Leading (monomial, coefficient) in lex order u > v."""
        m = max(self.terms)
        return m, self.terms[m]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading()
        return self * self.field.inv(c)

    def evaluate(self, u, v):
        F = self.field
        acc = F.zero
        for (i, j), c in self.terms.items():
            acc = F.add(acc, F.mul(c, F.mul(F.pow(u, i), F.pow(v, j))))
        return acc

    def derivative(self, which: int):
        F = self.field
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[which]
            if e == 0:
                continue
            k = F.mul(F.from_int(e), c)
            if not F.is_zero(k):
                out[(i - 1, j) if which == 0 else (i, j - 1)] = k
        return self._new(out)

    def map_coefficients(self, f, field=None):
        field = field or self.field
        return ChartPolynomial(field, self.variables, {m: f(c) for m, c in self.terms.items()})

    def rename(self, variables):
        return ChartPolynomial(self.field, variables, self.terms)

    def swap(self):
        """Exchange the roles of the two variables."""
        return ChartPolynomial(
            self.field, self.variables[::-1], {(j, i): c for (i, j), c in self.terms.items()}
        )

    def translate(self, u0, v0):
        """p(u + u0, v + v0)."""
        F = self.field
        du, dv = self.degree(0), self.degree(1)
        upow = _binomial_powers(F, u0, du)
        vpow = _binomial_powers(F, v0, dv)
        out: dict = {}
        for (i, j), c in self.terms.items():
            for a, ca in enumerate(upow[i]):
                if F.is_zero(ca):
                    continue
                cca = F.mul(c, ca)
                for b, cb in enumerate(vpow[j]):
                    if F.is_zero(cb):
                        continue
                    m = (a, b)
                    out[m] = F.add(out.get(m, F.zero), F.mul(cca, cb))
        return self._new({m: c for m, c in out.items() if not F.is_zero(c)})

    # k[v][u] view ------------------------------------------------------
    def to_rpoly(self, main: int = 0):
        """Coefficient list over k[other] indexed by the power of the main variable."""
        F = self.field
        if not self.terms:
            return []
        n = self.degree(main) + 1
        out = [[] for _ in range(n)]
        other = 1 - main
        for m, c in self.terms.items():
            col = out[m[main]]
            e = m[other]
            if len(col) <= e:
                col.extend([F.zero] * (e + 1 - len(col)))
            col[e] = c
        return [U.trim(col) for col in out]

    @classmethod
    def from_rpoly(cls, field, variables, rp, main: int = 0):
        terms = {}
        for a, col in enumerate(rp):
            for b, c in enumerate(col):
                if not field.is_zero(c):
                    terms[(a, b) if main == 0 else (b, a)] = c
        return cls(field, variables, terms)


def _binomial_powers(F, a, n):
    """[(X + a)^e as a coefficient list for e in 0..n]."""
    out = [[F.one]]
    for _ in range(n):
        prev = out[-1]
        nxt = [F.zero] * (len(prev) + 1)
        for k, c in enumerate(prev):
            nxt[k + 1] = F.add(nxt[k + 1], c)
            nxt[k] = F.add(nxt[k], F.mul(c, a))
        out.append(nxt)
    return out


# ---------------------------------------------------------------------------
# arithmetic in k[v][u]


def _r_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _r_content(F, p):
    g = []
    for c in p:
        g = U.gcd(F, g, c)
        if len(g) == 1:
            break
    return g


def _r_div_scalar(F, p, c):
    return [U.exact_div(F, a, c) for a in p]


def _r_primitive(F, p):
    if not p:
        return p
    c = _r_content(F, p)
    if len(c) == 1:
        return p
    return _r_div_scalar(F, p, c)


def _r_sub(F, p, q):
    n = max(len(p), len(q))
    out = [U.sub(F, p[i] if i < len(p) else [], q[i] if i < len(q) else []) for i in range(n)]
    return _r_trim(out)


def _r_scale(F, p, c):
    return _r_trim([U.mul(F, a, c) for a in p])


def _r_prem(F, a, b, exact: bool = True):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    n = len(b) - 1
    r = list(a)
    lcb = b[-1]
    e = len(a) - len(b) + 1
    steps = 0
    while r and len(r) - 1 >= n:
        k = len(r) - 1 - n
        lcr = r[-1]
        r = _r_scale(F, r, lcb)
        shifted = [[] for _ in range(k)] + [U.mul(F, c, lcr) for c in b]
        r = _r_sub(F, r, shifted)
        steps += 1
    if exact and e > steps:
        r = _r_scale(F, r, U.pow_(F, lcb, e - steps))
    return r


def _r_exact_div(F, a, b):
    """Exact quotient in k[v][u]; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = [list(c) for c in a]
    n = len(b) - 1
    if len(r) - 1 < n:
        if r:
            raise ArithmeticError("inexact polynomial division")
        return []
    q = [[] for _ in range(len(r) - n)]
    lcb = b[-1]
    while r and len(r) - 1 >= n:
        k = len(r) - 1 - n
        c, rem = U.divmod_(F, r[-1], lcb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        shifted = [[] for _ in range(k)] + [U.mul(F, c, bc) for bc in b]
        r = _r_sub(F, r, shifted)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _r_trim(q)


def _r_gcd(F, a, b):
    if not a:
        return b
    if not b:
        return a
    ca, cb = _r_content(F, a), _r_content(F, b)
    c = U.gcd(F, ca, cb)
    a, b = _r_div_scalar(F, a, ca), _r_div_scalar(F, b, cb)
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = _r_prem(F, a, b, exact=False)
        a, b = b, _r_primitive(F, r)
    if b:  # b is a nonzero element of k[v]: the primitive gcd is 1
        g = [[F.one]]
    else:
        g = _r_primitive(F, a)
    return _r_scale(F, g, c)


def _main_variable(p: ChartPolynomial, q: ChartPolynomial) -> int:
    # cheaper to eliminate along the variable of smaller degree
    return 0 if max(p.degree(0), q.degree(0)) <= max(p.degree(1), q.degree(1)) else 1


# ---------------------------------------------------------------------------
# public operations


def exact_quotient(p: ChartPolynomial, q: ChartPolynomial) -> ChartPolynomial:
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    main = _main_variable(p, q)
    rq = _r_exact_div(p.field, p.to_rpoly(main), q.to_rpoly(main))
    return ChartPolynomial.from_rpoly(p.field, p.variables, rq, main)


def divides(q: ChartPolynomial, p: ChartPolynomial) -> bool:
    try:
        exact_quotient(p, q)
    except ArithmeticError:
        return False
    return True


def gcd(p: ChartPolynomial, q: ChartPolynomial) -> ChartPolynomial:
    """Greatest common divisor, monic in lex order (first variable highest)."""
    p._check(q)
    F = p.field
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.is_constant() or q.is_constant():
        return ChartPolynomial.one(F, p.variables)
    # strip common monomial factors first; cheap and common in chart work
    mu = min(p.valuation(0), q.valuation(0))
    mv = min(p.valuation(1), q.valuation(1))
    mono = ChartPolynomial.monomial(F, p.variables, mu, mv)
    if mu or mv:
        p = _shift_down(p, p.valuation(0), p.valuation(1))
        q = _shift_down(q, q.valuation(0), q.valuation(1))
    else:
        mono = None
    main = _main_variable(p, q)
    g = ChartPolynomial.from_rpoly(F, p.variables, _r_gcd(F, p.to_rpoly(main), q.to_rpoly(main)), main)
    if mono is not None:
        g = g * mono
    return g.monic()


def _shift_down(p, a, b):
    return p._new({(i - a, j - b): c for (i, j), c in p.terms.items()})


def gcd_many(polys: Iterable[ChartPolynomial]) -> ChartPolynomial:
    g = None
    for p in polys:
        g = p.monic() if g is None else gcd(g, p)
        if g.is_constant() and not g.is_zero():
            break
    return g


def lcm(p: ChartPolynomial, q: ChartPolynomial) -> ChartPolynomial:
    return exact_quotient(p * q, gcd(p, q)).monic()


def squarefree_decomposition(p: ChartPolynomial) -> list[tuple[ChartPolynomial, int]]:
    """Pairs (f_e, e) with p = unit * prod f_e^e, the f_e squarefree and coprime.

    In characteristic 2 both partial derivatives of a square vanish, so the
    residue left after the derivative pass is a perfect square whose
    coefficient-wise square root is decomposed recursively.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    out: dict[int, ChartPolynomial] = {}
    _sqf(p.monic(), 1, out)
    return sorted(((f, e) for e, f in out.items()), key=lambda fe: fe[1])


def _sqf(p: ChartPolynomial, scale: int, out):
    if p.is_constant():
        return
    F = p.field
    du, dv = p.derivative(0), p.derivative(1)
    c = gcd_many([p, du, dv])
    w = exact_quotient(p, c)
    i = 1
    while not w.is_constant():
        y = gcd(w, c)
        z = exact_quotient(w, y)
        if not z.is_constant():
            z = z.monic()
            out[i * scale] = (out[i * scale] * z).monic() if i * scale in out else z
        i += 1
        w = y
        c = exact_quotient(c, y)
    if not c.is_constant():
        if F.characteristic != 2:
            raise ArithmeticError("residual p-th power in characteristic 0")
        _sqf(_coefficient_sqrt(c), 2 * scale, out)


def _coefficient_sqrt(p: ChartPolynomial) -> ChartPolynomial:
    F = p.field
    terms = {}
    for (i, j), c in p.terms.items():
        if i % 2 or j % 2:
            raise ArithmeticError("not a square: odd exponent present")
        terms[(i // 2, j // 2)] = F.sqrt(c)
    return ChartPolynomial(F, p.variables, terms)


def square_part(p: ChartPolynomial) -> ChartPolynomial:
    """The maximal monic h with h^2 dividing p."""
    if p.is_zero():
        raise ValueError("square part of the zero polynomial")
    h = ChartPolynomial.one(p.field, p.variables)
    for f, e in squarefree_decomposition(p):
        if e >= 2:
            h = h * f ** (e // 2)
    return h.monic()


def resultant(p: ChartPolynomial, q: ChartPolynomial, which: int) -> list:
    """Res_{var_which}(p, q) as a univariate coefficient list in the other variable."""
    p._check(q)
    F = p.field
    a, b = p.to_rpoly(which), q.to_rpoly(which)
    return _r_resultant(F, a, b)


def _r_resultant(F, a, b):
    # Collins/Brown subresultant algorithm over the PID k[v].
    if not a or not b:
        return []
    one = [F.one]
    neg_one = [F.neg(F.one)]
    da, db = len(a) - 1, len(b) - 1
    if da == 0 and db == 0:
        return one
    if da == 0:
        return U.pow_(F, a[0], db)
    if db == 0:
        return U.pow_(F, b[0], da)
    ca, cb = _r_content(F, a), _r_content(F, b)
    a, b = _r_div_scalar(F, a, ca), _r_div_scalar(F, b, cb)
    t = U.mul(F, U.pow_(F, ca, db), U.pow_(F, cb, da))
    s = one
    if da < db:
        a, b = b, a
        if da % 2 and db % 2:
            s = neg_one
    g = h = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = U.neg(F, s)
        r = _r_prem(F, a, b)
        a = b
        if not r:
            return []
        b = _r_div_scalar(F, r, U.mul(F, g, U.pow_(F, h, delta)))
        g = a[-1]
        if delta:
            h = U.exact_div(F, U.pow_(F, g, delta), U.pow_(F, h, delta - 1))
        if len(b) - 1 <= 0:
            break
    da = len(a) - 1
    lb = b[0]
    if da == 0:
        hh = h
    else:
        hh = U.exact_div(F, U.pow_(F, lb, da), U.pow_(F, h, da - 1))
    return U.mul(F, s, U.mul(F, t, hh))


# ---------------------------------------------------------------------------
# ASCII parse / format

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_polynomial(text: str, field, variables=("x", "t")) -> ChartPolynomial:
    """Parse ``"x^2*t + 3*x + 1"``.

    Over F_{2^k} an integer coefficient is an element code (bit i is the
    coefficient of alpha^i); over Q coefficients are integers or ``p/q``.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    parts = _TERM_SPLIT.split(s)
    out = ChartPolynomial.zero(field, variables)
    # parts = ['', sign, term, sign, term, ...]
    if parts[0].strip():
        raise ValueError(f"cannot parse {text!r}")
    for sign, term in zip(parts[1::2], parts[2::2]):
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        c = field.one
        exps = [0, 0]
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor in variables or "^" in factor:
                name, _, e = factor.partition("^")
                name = name.strip()
                if name not in variables:
                    raise ValueError(f"unknown variable {name!r}; expected one of {variables}")
                exps[variables.index(name)] += int(e) if e else 1
            else:
                c = field.mul(c, field.parse(factor))
        if sign == "-":
            c = field.neg(c)
        out = out + ChartPolynomial.monomial(field, variables, exps[0], exps[1], c)
    return out


def format_polynomial(p: ChartPolynomial) -> str:
    if not p.terms:
        return "0"
    F = p.field
    u, v = p.variables
    pieces = []
    for (i, j) in sorted(p.terms, reverse=True):
        c = p.terms[(i, j)]
        sign = "+"
        if F.characteristic == 0 and c < 0:
            sign, c = "-", -c
        mono = []
        if i:
            mono.append(u if i == 1 else f"{u}^{i}")
        if j:
            mono.append(v if j == 1 else f"{v}^{j}")
        if c != F.one or not mono:
            mono.insert(0, F.format(c))
        pieces.append((sign, "*".join(mono)))
    text = pieces[0][1] if pieces[0][0] == "+" else "-" + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
