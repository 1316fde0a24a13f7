"""The family z^2 + lambda s z + t = 0 of double covers, and coefficient lifting to Q."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .algebra.bivariate import ChartPolynomial, gcd, square_part
from .algebra.fields import QQ, GF2k, gf
from .cohomology import CohomologyVector, cech_limit, cech_oracle, cohomology
from .cover import (
    CoverInvariants,
    DoubleCoverDatum,
    base_variables,
    in_h0,
    invariants,
    monomial_basis,
    section_charts,
)
from .lattice import DivisorClass, SurfaceModel, canonical_class, intersect, structure_class


class LiftRefused(ValueError):
    pass


@dataclass(frozen=True)
class FamilyDatum:
    base: SurfaceModel
    L: DivisorClass
    s: ChartPolynomial
    t: ChartPolynomial
    lam: object

    def __post_init__(self):
        DoubleCoverDatum(self.base, self.L, self.s, self.t)
        if self.s.field.characteristic != 2:
            raise ValueError("the family is defined over a field of characteristic 2")

    @property
    def field(self):
        return self.s.field

    def at(self, lam) -> "FamilyDatum":
        return FamilyDatum(self.base, self.L, self.s, self.t, lam)

    def cover(self) -> DoubleCoverDatum:
        return DoubleCoverDatum(self.base, self.L, self.s * self.lam, self.t)


def is_separable(f: FamilyDatum) -> bool:
    return not (f.s * f.lam).is_zero()


@dataclass(frozen=True)
class Normality:
    ok: bool
    witness: Optional[ChartPolynomial] = None
    chart: Optional[str] = None

    def to_json(self) -> dict:
        if self.ok:
            return {"status": "ok"}
        return {"status": "singular_along_divisor", "chart": self.chart, "witness": str(self.witness)}


Sections = Union[ChartPolynomial, Mapping[str, ChartPolynomial]]


def _as_charts(p: Sections) -> dict:
    return dict(p) if isinstance(p, Mapping) else {"chart": p}


def normality_diagnostics(f_sec: Sections, g_sec: Sections) -> Normality:
    """Look for a curve {h = 0} along which z^2 + f z + g = 0 is singular.

    With f = 0 that happens iff h^2 | g.  Otherwise it happens iff h | f and
    h^2 | g; for irreducible h the second condition is h | square_part(g).
    """
    fs, gs = _as_charts(f_sec), _as_charts(g_sec)
    if fs.keys() != gs.keys():
        raise ValueError("f and g must be given on the same charts")
    for chart in fs:
        f, g = fs[chart], gs[chart]
        if g.is_zero():
            return Normality(False, f if not f.is_zero() else g, chart)
        sq = square_part(g)
        h = sq if f.is_zero() else gcd(f, sq)
        if not h.is_constant():
            return Normality(False, h, chart)
    return Normality(True)


def family_normality(f: FamilyDatum) -> Normality:
    S = f.base
    return normality_diagnostics(section_charts(S, f.L, f.s * f.lam), section_charts(S, 2 * f.L, f.t))


@dataclass(frozen=True)
class SweepRow:
    lam: object
    separable: bool
    normality: Normality
    invariants: CoverInvariants

    def to_json(self, field) -> dict:
        return {
            "lambda": field.to_json(self.lam),
            "separable": self.separable,
            "normality": self.normality.to_json(),
            **self.invariants.to_json(),
        }


def lambda_sweep(f: FamilyDatum, values: Sequence) -> list[SweepRow]:
    rows = []
    for lam in sorted(set(values)):
        g = f.at(f.field.element(lam))
        rows.append(SweepRow(g.lam, is_separable(g), family_normality(g), invariants(g.cover())))
    return rows


def random_section(S: SurfaceModel, D: DivisorClass, field, rng: random.Random, density: float = 0.5) -> ChartPolynomial:
    """Sparse section of O(D): each basis monomial kept with probability ``density``."""
    nonzero = [c for c in range(1, field.order)]
    terms = {}
    for m in monomial_basis(S, D):
        if rng.random() < density:
            terms[m] = field.element(rng.choice(nonzero))
    return ChartPolynomial(field, base_variables(S), terms)


@dataclass(frozen=True)
class DrawnFamily:
    family: FamilyDatum
    draws: int
    seed: int


def draw_family(S: SurfaceModel, L: DivisorClass, field: Optional[GF2k] = None, seed: int = 0,
                max_draws: int = 1000) -> DrawnFamily:
    """Seeded sections s != 0 and t with z^2 + t = 0 normal; redrawn until they pass."""
    field = gf(2) if field is None else field
    rng = random.Random(seed)
    for n in range(1, max_draws + 1):
        s = random_section(S, L, field, rng)
        t = random_section(S, 2 * L, field, rng)
        if s.is_zero() or t.is_zero():
            continue
        fam = FamilyDatum(S, L, s, t, field.zero)
        if family_normality(fam).ok:
            return DrawnFamily(fam, n, seed)
    raise RuntimeError(f"no normal section pair found in {max_draws} draws")


# ---------------------------------------------------------------------------
# lifting to characteristic 0


@dataclass(frozen=True)
class LiftReport:
    bundles: dict
    char2: tuple
    char0: tuple
    sections_lifted: bool

    @property
    def passed(self) -> bool:
        return all(a == b for a, b in self.bundles.values()) and self.char2 == self.char0 and self.sections_lifted

    def to_json(self) -> dict:
        return {
            "bundles": {k: {"F2": a.to_json(), "Q": b.to_json()} for k, (a, b) in self.bundles.items()},
            "invariants_F2": dict(zip(("Ksq", "pg", "chi"), self.char2)),
            "invariants_Q": dict(zip(("Ksq", "pg", "chi"), self.char0)),
            "sections_lifted": self.sections_lifted,
            "passed": self.passed,
        }


def lift_polynomial(p: ChartPolynomial) -> ChartPolynomial:
    """Read F_2 coefficients as the integers 0, 1 in Q."""
    F = p.field
    if F.characteristic != 2 or getattr(F, "k", None) != 1:
        raise LiftRefused("coefficient lifting is defined for polynomials over F_2")
    return ChartPolynomial(QQ, p.variables, {m: QQ.element(int(c)) for m, c in p.terms.items()})


def lift_check(c: DoubleCoverDatum) -> LiftReport:
    S, L = c.base, c.L
    if cohomology(S, L).h1:
        raise LiftRefused(f"h1(L) = {cohomology(S, L).h1} for L = {L}; lifting needs h1(L) = 0")
    K = canonical_class(S)
    named = (("L", L), ("2L", 2 * L), ("K+L", K + L))
    # the bundles are fixed by the datum, so the desk-scale bound is widened to fit them
    limit = max([cech_limit()] + [abs(x) for _, D in named for x in D.coeffs])

    def char2(D):
        return cech_oracle(S, D, characteristic=2, limit=limit)

    bundles = {name: (char2(D), cohomology(S, D)) for name, D in named}
    lifted = True
    for sec, D in ((c.f, L), (c.g, 2 * L)):
        if sec is not None:
            q = lift_polynomial(sec)
            lifted = lifted and in_h0(S, D, q) and len(q.terms) == len(sec.terms)
    char2_inv = _invariants_from(S, L, char2)
    char0 = _invariants_from(S, L, lambda D: cohomology(S, D))
    return LiftReport(bundles, char2_inv, char0, lifted)


def _invariants_from(S, L, coh) -> tuple[int, int, int]:
    K = canonical_class(S)
    KL = K + L
    Ksq = 2 * intersect(KL, KL)
    pg = coh(KL).h0 + coh(K).h0
    chi = coh(structure_class(S)).chi + coh(-L).chi
    return Ksq, pg, chi


def draw_f2_cover(S: SurfaceModel, L: DivisorClass, seed: int = 0) -> DoubleCoverDatum:
    rng = random.Random(seed)
    F = gf(1)
    return DoubleCoverDatum(S, L, random_section(S, L, F, rng), random_section(S, 2 * L, F, rng))


__all__ = [
    "CohomologyVector",
    "FamilyDatum",
    "LiftRefused",
    "Normality",
    "draw_family",
    "is_separable",
    "lambda_sweep",
    "lift_check",
    "normality_diagnostics",
]
