"""Numerical invariants of flat double covers X -> S of P^2 or F_d.

A cover is determined numerically by its associated line bundle L
(pi_* O_X = O_S + L^-1).  Explicit covers z^2 + f z + g = 0 carry
sections f of L and g of L^2, written as polynomials in the first affine
chart; :func:`section_charts` transports them to the other charts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .algebra.bivariate import ChartPolynomial
from .cohomology import cohomology, euler_characteristic, h0
from .lattice import (
    DivisorClass,
    Hirzebruch,
    ProjectivePlane,
    SurfaceModel,
    canonical_class,
    intersect,
    structure_class,
)


class SplittingError(ArithmeticError):
    """h^1(K_S + L) != 0, so the section count of pi_* omega_X is not exact."""


class SectionOutOfBounds(ValueError):
    pass


# ---------------------------------------------------------------------------
# charts and sections


def base_variables(S: SurfaceModel) -> tuple[str, str]:
    return ("x", "y") if isinstance(S, ProjectivePlane) else ("x1", "t1")


def chart_names(S: SurfaceModel) -> list[str]:
    if isinstance(S, ProjectivePlane):
        return ["z", "x", "y"]
    return ["x1t1", "y1t1", "x2t2", "y2t2"]


_CHART_VARS = {
    "z": ("x", "y"),
    "x": ("u", "v"),
    "y": ("u", "v"),
    "x1t1": ("x1", "t1"),
    "y1t1": ("y1", "t1"),
    "x2t2": ("x2", "t2"),
    "y2t2": ("y2", "t2"),
}


def chart_variables(chart: str) -> tuple[str, str]:
    return _CHART_VARS[chart]


def _chart_exponent(S: SurfaceModel, D: DivisorClass, chart: str, i: int, j: int):
    """Exponents of the monomial x^i t^j (base chart) in the trivialisation on ``chart``."""
    if isinstance(S, ProjectivePlane):
        n = D.coeffs[0]
        if chart == "z":
            return i, j
        if chart == "x":  # (u, v) = (Y/X, Z/X)
            return j, n - i - j
        return i, n - i - j  # chart "y": (u, v) = (X/Y, Z/Y)
    a, b = D.coeffs
    d = S.d
    if chart == "x1t1":
        return i, j
    if chart == "y1t1":
        return a - i, j
    if chart == "x2t2":
        return i, b - d * i - j
    return a - i, b - d * i - j


def monomial_basis(S: SurfaceModel, D: DivisorClass) -> list[tuple[int, int]]:
    """Exponents (i, j) of base-chart monomials spanning H^0(O(D))."""
    if isinstance(S, ProjectivePlane):
        n = D.coeffs[0]
        return [(i, j) for i in range(n + 1) for j in range(n + 1 - i)] if n >= 0 else []
    a, b = D.coeffs
    return [(i, j) for i in range(a + 1) for j in range(b - S.d * i + 1)] if a >= 0 else []


def in_h0(S: SurfaceModel, D: DivisorClass, f: ChartPolynomial) -> bool:
    """True iff f extends to a regular section on every chart."""
    return all(
        min(_chart_exponent(S, D, c, i, j)) >= 0 for c in chart_names(S) for (i, j) in f.terms
    )


def section_charts(S: SurfaceModel, D: DivisorClass, f: ChartPolynomial) -> dict[str, ChartPolynomial]:
    """Local equations of the section f of O(D) on each chart."""
    if f.variables != base_variables(S):
        raise ValueError(f"sections on {S} are written in variables {base_variables(S)}")
    out = {}
    for c in chart_names(S):
        terms = {}
        for (i, j), coef in f.terms.items():
            e = _chart_exponent(S, D, c, i, j)
            if min(e) < 0:
                raise SectionOutOfBounds(f"{f} is not a global section of O({D}) (chart {c})")
            terms[e] = coef
        out[c] = ChartPolynomial(f.field, chart_variables(c), terms)
    return out


# ---------------------------------------------------------------------------
# covers


@dataclass(frozen=True)
class DoubleCoverDatum:
    base: SurfaceModel
    L: DivisorClass
    f: Optional[ChartPolynomial] = None
    g: Optional[ChartPolynomial] = None

    def __post_init__(self):
        if self.L.surface != self.base:
            raise ValueError(f"L = {self.L} does not live on {self.base}")
        if self.f is not None and not in_h0(self.base, self.L, self.f):
            raise SectionOutOfBounds(f"f = {self.f} is not in H^0(L)")
        if self.g is not None and not in_h0(self.base, 2 * self.L, self.g):
            raise SectionOutOfBounds(f"g = {self.g} is not in H^0(2L)")


@dataclass(frozen=True)
class CoverInvariants:
    Ksq: int
    pg: int
    chi: int
    h01: int
    on_noether_line: bool

    def to_json(self) -> dict:
        return {
            "Ksq": self.Ksq,
            "pg": self.pg,
            "chi": self.chi,
            "h01": self.h01,
            "on_noether_line": self.on_noether_line,
        }


def omega_class(c: DoubleCoverDatum) -> DivisorClass:
    """K_S + L, whose pullback is K_X."""
    return canonical_class(c.base) + c.L


def invariants(c: DoubleCoverDatum) -> CoverInvariants:
    S = c.base
    KL = omega_class(c)
    if cohomology(S, KL).h1:
        raise SplittingError(f"h1(K_S + L) = {cohomology(S, KL).h1} for L = {c.L}")
    Ksq = 2 * intersect(KL, KL)
    pg = h0(S, KL) + h0(S, canonical_class(S))
    chi = euler_characteristic(S, structure_class(S)) + euler_characteristic(S, -c.L)
    h01 = 1 - chi + pg
    return CoverInvariants(Ksq, pg, chi, h01, Ksq == 2 * pg - 4)


def pluricanonical_h0(c: DoubleCoverDatum, n: int) -> int:
    """h^0(omega_X^n) = h^0(n(K+L)) + h^0(n(K+L) - L) by the projection formula."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    nKL = n * omega_class(c)
    return h0(c.base, nKL) + h0(c.base, nKL - c.L)


class NoetherStatus(enum.Enum):
    VIOLATES = "violates"
    ON_LINE = "on_line"
    STRICTLY_ABOVE = "strictly_above"


class NoetherCheck(NamedTuple):
    status: NoetherStatus
    # second inequality K^2 >= 2 pg - 2, relevant when |K| is composed with a pencil
    pencil_bound: bool


def noether_check(Ksq: int, pg: int) -> NoetherCheck:
    bound = 2 * pg - 4
    if Ksq < bound:
        status = NoetherStatus.VIOLATES
    elif Ksq == bound:
        status = NoetherStatus.ON_LINE
    else:
        status = NoetherStatus.STRICTLY_ABOVE
    return NoetherCheck(status, Ksq >= 2 * pg - 2)


def etale_cover_bound(Ksq: int, pg: int, m: int) -> bool:
    """m(1 + pg) <= (m/2) Ksq + 3, the Noether bound on a degree-m etale cover."""
    return 2 * m * (1 + pg) <= m * Ksq + 6


def is_hirzebruch(S: SurfaceModel) -> bool:
    return isinstance(S, Hirzebruch)
