"""Zero-dimensional bivariate systems: local multiplicities and common zeros."""

from __future__ import annotations

from dataclasses import dataclass

from . import upoly as U
from .bivariate import ChartPolynomial, gcd, resultant
from .fields import GF2k, embedder, gf, restrict

DEFAULT_MAX_ORDER = 64


class NotACommonZero(ValueError):
    pass


class PositiveDimensionalError(ValueError):
    pass


class TruncationBoundExceeded(RuntimeError):
    pass


def _rank_increment(F, pivots: dict, row: dict) -> bool:
    """Reduce ``row`` against ``pivots`` in place; add it if independent."""
    while row:
        c = min(row)
        p = pivots.get(c)
        if p is None:
            inv = F.inv(row[c])
            pivots[c] = {k: F.mul(v, inv) for k, v in row.items()}
            return True
        f = row[c]
        for k, v in p.items():
            s = F.sub(row.get(k, F.zero), F.mul(f, v))
            if F.is_zero(s):
                row.pop(k, None)
            else:
                row[k] = s
    return False


def _colength(a: ChartPolynomial, b: ChartPolynomial, order: int) -> int:
    """dim k[u,v] / ((a, b) + m^order) for a, b vanishing at the origin."""
    F = a.field
    index = {}
    for s in range(order):
        for i in range(s + 1):
            index[(i, s - i)] = len(index)
    pivots: dict = {}
    for g in (a, b):
        low = [(m, c) for m, c in g.terms.items() if m[0] + m[1] < order]
        for s in range(order):
            for i in range(s + 1):
                j = s - i
                row = {}
                for (p, q), c in low:
                    if p + q + s < order:
                        row[index[(p + i, q + j)]] = c
                if row:
                    _rank_increment(F, pivots, row)
    return len(index) - len(pivots)


def local_multiplicity(A: ChartPolynomial, B: ChartPolynomial, point, max_order: int = DEFAULT_MAX_ORDER) -> int:
    """Dimension of the local algebra O_{point} / (A, B).

    The truncated colength dim O/((A,B) + m^N) is nondecreasing in N and,
    by Nakayama, constant from the first N where it fails to grow; that
    stable value is the local multiplicity.
    """
    A._check(B)
    u0, v0 = point
    if not A.field.is_zero(A.evaluate(u0, v0)) or not B.field.is_zero(B.evaluate(u0, v0)):
        raise NotACommonZero(f"{point} is not a common zero of the system")
    a, b = A.translate(u0, v0), B.translate(u0, v0)
    prev = _colength(a, b, 1)
    for n in range(2, max_order + 1):
        cur = _colength(a, b, n)
        if cur == prev:
            return cur
        prev = cur
    raise TruncationBoundExceeded(
        f"local algebra did not stabilise below truncation order {max_order}; "
        f"last colength {prev} (the point may not be isolated)"
    )


@dataclass(frozen=True)
class CommonZero:
    """A Galois orbit of common zeros, represented by one point.

    ``point`` holds element codes of ``field``: the base field when the
    point is rational, otherwise the smallest extension containing it.
    """

    point: tuple
    multiplicity: int
    residue_degree: int
    field: GF2k

    def to_json(self):
        return {
            "point": list(self.point),
            "field": self.field.label,
            "multiplicity": self.multiplicity,
            "residue_degree": self.residue_degree,
        }


def rational_points_of_system(A: ChartPolynomial, B: ChartPolynomial, max_order: int = DEFAULT_MAX_ORDER) -> list[CommonZero]:
    """All common zeros of a coprime pair over the algebraic closure of F_{2^k}.

    Coordinates are found as roots of the two resultants inside a common
    splitting field; each Frobenius orbit is reported once with its size as
    residue degree.
    """
    A._check(B)
    F = A.field
    if F.characteristic != 2:
        raise NotImplementedError("common-zero solving is provided over F_{2^k} only")
    if A.is_zero() and B.is_zero():
        raise PositiveDimensionalError("both equations vanish identically")
    if not gcd(A, B).is_constant():
        raise PositiveDimensionalError("the system has a common curve component; saturate first")
    if A.is_zero() or B.is_zero():
        return []
    ru = U.trim(resultant(A, B, 1))
    rv = U.trim(resultant(A, B, 0))
    if len(ru) <= 1 or len(rv) <= 1:
        return []
    r = 1
    for res in (ru, rv):
        s = U.splitting_degree(F, res)
        r = r * s // _gcd(r, s)
    big = gf(F.k * r)
    emb = embedder(F, big)
    Ab = A.map_coefficients(emb, big)
    Bb = B.map_coefficients(emb, big)
    us = U.roots_in_field(big, [emb(c) for c in ru])
    vs = U.roots_in_field(big, [emb(c) for c in rv])
    seen: set = set()
    out = []
    for u0 in us:
        for v0 in vs:
            if (u0, v0) in seen:
                continue
            if Ab.evaluate(u0, v0) or Bb.evaluate(u0, v0):
                continue
            orbit = _frobenius_orbit(big, F.k, (u0, v0))
            seen.update(orbit)
            rep = min(orbit)
            mult = local_multiplicity(Ab, Bb, rep, max_order)
            out.append(_as_zero(F, big, rep, mult, len(orbit)))
    out.sort(key=lambda z: (z.residue_degree, z.point))
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _frobenius_orbit(big, k, pt):
    orbit = [pt]
    cur = pt
    while True:
        cur = tuple(big.frobenius(c, k) for c in cur)
        if cur == pt:
            return orbit
        orbit.append(cur)


def _as_zero(F, big, pt, mult, deg):
    if deg == 1:
        base = tuple(restrict(F, big, c) for c in pt)
        if None not in base:
            return CommonZero(base, mult, 1, F)
    return CommonZero(pt, mult, deg, big)


def total_multiplicity(zeros) -> int:
    return sum(z.multiplicity * z.residue_degree for z in zeros)
