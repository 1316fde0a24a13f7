"""Line-bundle cohomology on P^2 and F_d.

``cohomology`` uses the toric section count for h^0, Serre duality for h^2
and Riemann-Roch for chi; h^1 is whatever is left.  ``cech_oracle`` is an
independent check: it builds the Cech complex of the standard affine toric
cover one Laurent-monomial weight at a time and takes ranks.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .lattice import (
    DivisorClass,
    Hirzebruch,
    ProjectivePlane,
    SurfaceModel,
    SurfaceMismatch,
    canonical_class,
    intersect,
)

DEFAULT_CECH_LIMIT = 30


class CohomologyError(ArithmeticError):
    """The closed formulas produced an impossible vector (must never happen)."""


class OracleLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class CohomologyVector:
    h0: int
    h1: int
    h2: int
    chi: int

    def __post_init__(self):
        if min(self.h0, self.h1, self.h2) < 0:
            raise CohomologyError(f"negative cohomology dimension in {self}")
        if self.chi != self.h0 - self.h1 + self.h2:
            raise CohomologyError(f"chi mismatch in {self}")

    def astuple(self):
        return (self.h0, self.h1, self.h2, self.chi)

    def to_json(self) -> dict:
        return {"h0": self.h0, "h1": self.h1, "h2": self.h2, "chi": self.chi}


def _on(S: SurfaceModel, D: DivisorClass):
    if D.surface != S:
        raise SurfaceMismatch(f"{D} does not live on {S}")


def h0(S: SurfaceModel, D: DivisorClass) -> int:
    _on(S, D)
    if isinstance(S, ProjectivePlane):
        n = D.coeffs[0]
        return (n + 2) * (n + 1) // 2 if n >= 0 else 0
    a, b = D.coeffs
    if a < 0:
        return 0
    return sum(max(0, b - k * S.d + 1) for k in range(a + 1))


def euler_characteristic(S: SurfaceModel, D: DivisorClass) -> int:
    """Riemann-Roch: chi(D) = 1 + D.(D - K)/2."""
    twice = intersect(D, D - canonical_class(S))
    if twice % 2:
        raise CohomologyError(f"D.(D-K) is odd for {D}")
    return 1 + twice // 2


def cohomology(S: SurfaceModel, D: DivisorClass) -> CohomologyVector:
    _on(S, D)
    top = h0(S, canonical_class(S) - D)
    chi = euler_characteristic(S, D)
    bottom = h0(S, D)
    middle = bottom + top - chi
    if middle < 0:
        raise CohomologyError(f"derived h1 = {middle} < 0 for {D}")
    return CohomologyVector(bottom, middle, top, chi)


def h1(S: SurfaceModel, D: DivisorClass) -> int:
    return cohomology(S, D).h1


# ---------------------------------------------------------------------------
# Cech oracle


def _fan(S: SurfaceModel):
    """Rays and per-ray divisor coefficients of a torus-invariant representative."""
    if isinstance(S, ProjectivePlane):
        return ((1, 0), (0, 1), (-1, -1))
    if isinstance(S, Hirzebruch):
        return ((1, 0), (0, 1), (-1, S.d), (0, -1))
    raise TypeError(f"not a supported surface: {S!r}")


def _ray_coefficients(S: SurfaceModel, D: DivisorClass):
    if isinstance(S, ProjectivePlane):
        return (0, 0, D.coeffs[0])
    a, b = D.coeffs
    # ray (1,0) is a fibre, ray (0,1) is Delta0
    return (b, a, 0, 0)


@lru_cache(maxsize=None)
def _pattern_cohomology(nrays: int, pattern: int, characteristic: int) -> tuple[int, ...]:
    """Cech cohomology of one weight space.

    Chart i is the cone on rays {i, i+1}; the weight is a section over the
    intersection of charts I iff every ray common to those cones lies in
    ``pattern`` (a bitmask of rays where the weight is regular).
    """
    charts = range(nrays)
    cone = [frozenset({i, (i + 1) % nrays}) for i in charts]
    cells: list[list[tuple]] = []
    for p in range(nrays):
        keep = []
        for I in itertools.combinations(charts, p + 1):
            common = frozenset.intersection(*(cone[i] for i in I))
            if all(pattern >> r & 1 for r in common):
                keep.append(I)
        cells.append(keep)
    ranks = []
    for p in range(nrays - 1):
        src = {I: k for k, I in enumerate(cells[p])}
        rows = []
        for J in cells[p + 1]:
            row = {}
            for j in range(len(J)):
                I = J[:j] + J[j + 1:]
                if I in src:
                    row[src[I]] = -1 if j % 2 else 1
            rows.append(row)
        ranks.append(_rank(rows, characteristic))
    dims = [len(c) for c in cells]
    out = []
    for p in range(nrays):
        r_out = ranks[p] if p < len(ranks) else 0
        r_in = ranks[p - 1] if p >= 1 else 0
        out.append(dims[p] - r_out - r_in)
    return tuple(out)


def _rank(rows, characteristic: int) -> int:
    if characteristic == 2:
        rows = [{k: v % 2 for k, v in r.items() if v % 2} for r in rows]
    else:
        rows = [{k: Fraction(v) for k, v in r.items() if v} for r in rows]
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                if characteristic == 2:
                    pivots[c] = row
                else:
                    inv = 1 / row[c]
                    pivots[c] = {k: v * inv for k, v in row.items()}
                break
            f = row[c]
            for k, v in piv.items():
                s = row.get(k, 0) - f * v
                if characteristic == 2:
                    s %= 2
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return len(pivots)


def _box(S: SurfaceModel, coeffs):
    if isinstance(S, ProjectivePlane):
        n = abs(coeffs[2]) + 2
        return (-n, n), (-n, n)
    b, a = coeffs[0], coeffs[1]
    r2 = abs(a) + 2
    r1 = abs(b) + S.d * r2 + 2
    return (-r1, r1), (-r2, r2)


def cech_limit() -> int:
    return int(os.environ.get("HORIKAWA_CECH_LIMIT", DEFAULT_CECH_LIMIT))


def cech_oracle(S: SurfaceModel, D: DivisorClass, characteristic: int = 0, limit: int | None = None) -> CohomologyVector:
    """Cohomology of O(D) from the Cech complex of the toric affine cover.

    Ranks are taken over Q (``characteristic=0``) or F_2.  Raises if a
    weight with nonzero cohomology sits on the boundary of the search box.
    """
    _on(S, D)
    limit = cech_limit() if limit is None else limit
    if max(abs(c) for c in D.coeffs) > limit:
        raise OracleLimitExceeded(
            f"Cech oracle refuses {D}: coefficients must satisfy |c| <= {limit} "
            "(set HORIKAWA_CECH_LIMIT to raise the bound)"
        )
    if characteristic not in (0, 2):
        raise ValueError("characteristic must be 0 or 2")
    rays = _fan(S)
    coeffs = _ray_coefficients(S, D)
    (lo1, hi1), (lo2, hi2) = _box(S, coeffs)
    m1, m2 = np.meshgrid(np.arange(lo1, hi1 + 1), np.arange(lo2, hi2 + 1), indexing="ij")
    code = np.zeros(m1.shape, dtype=np.int64)
    for r, ((u1, u2), a) in enumerate(zip(rays, coeffs)):
        code |= ((u1 * m1 + u2 * m2 + a) >= 0).astype(np.int64) << r
    n = len(rays)
    counts = np.bincount(code.ravel(), minlength=1 << n)
    edge = np.concatenate([code[0, :], code[-1, :], code[:, 0], code[:, -1]])
    for pattern in np.unique(edge):
        if any(_pattern_cohomology(n, int(pattern), characteristic)):
            raise CohomologyError(f"search box too small for {D}: boundary weight is not acyclic")
    total = [0] * n
    for pattern, cnt in enumerate(counts):
        if cnt:
            for p, h in enumerate(_pattern_cohomology(n, pattern, characteristic)):
                total[p] += int(cnt) * h
    if any(total[3:]):
        raise CohomologyError(f"nonzero H^3 on a surface for {D}")
    hs = total[:3]
    return CohomologyVector(hs[0], hs[1], hs[2], hs[0] - hs[1] + hs[2])


def vanishing_region(S: SurfaceModel, D: DivisorClass) -> str | None:
    """Which of the two h^1-vanishing regions on F_d contains D, if any."""
    if isinstance(S, ProjectivePlane):
        return "P2"
    a, b = D.coeffs
    if a >= 0 and b >= 0:
        return "effective"
    if a <= -2 and b <= -(S.d + 2):
        return "dual"
    return None


def h1_vanishes(S: SurfaceModel, D: DivisorClass) -> bool:
    """Exact criterion for h^1(O(D)) = 0.

    On F_d: a = -1, or a >= 0 and b >= ad - 1, or (Serre dual) a <= -2 and
    b <= (a + 1)d - 1.
    """
    _on(S, D)
    if isinstance(S, ProjectivePlane):
        return True
    a, b = D.coeffs
    d = S.d
    if a == -1:
        return True
    if a >= 0:
        return b >= a * d - 1
    return b <= (a + 1) * d - 1
