"""Additive rational vector fields on F_d in characteristic 2 and their quotients.

F_d is covered by four affine charts glued by x1 = x2 / t2^d, t1 = 1 / t2 and
y_i = 1 / x_i.  A field is stored by its components on every chart; the
divisor class, isolated zeros and the numerics of the quotient by the field
are all read off from per-chart saturations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra.bivariate import ChartPolynomial, exact_quotient, gcd, lcm
from .algebra.fields import GF2k, smallest_field_for
from .algebra.rational import MonomialMap, RationalFunction
from .algebra.solve import CommonZero, rational_points_of_system
from .classify import enumerate_horikawa, hirzebruch_L, smooth_hirzebruch_admissible, cone_admissible
from .cover import CoverInvariants, DoubleCoverDatum, invariants
from .lattice import (
    P2,
    CanonicalImage,
    DivisorClass,
    Hirzebruch,
    SurfaceModel,
    canonical_class,
    chern_numbers,
    intersect,
    line,
)

CHARTS = ("x1t1", "y1t1", "x2t2", "y2t2")
VARIABLES = {
    "x1t1": ("x1", "t1"),
    "y1t1": ("y1", "t1"),
    "x2t2": ("x2", "t2"),
    "y2t2": ("y2", "t2"),
}


class FoliationError(ValueError):
    pass


class QuotientRejected(ValueError):
    """The case value lies outside {0, 4}; ``case_value`` carries it."""

    def __init__(self, case_value: int):
        super().__init__(f"case value 5d - 2l + 2m - 2 = {case_value} is neither 0 nor 4")
        self.case_value = case_value


def _inverse(M: MonomialMap, source: tuple[str, str]) -> MonomialMap:
    (a, b), (c, e) = M.images
    det = a * e - b * c
    if det not in (1, -1):
        raise ValueError("monomial map is not invertible over Z")
    return MonomialMap(((e * det, -b * det), (-c * det, a * det)), source)


@dataclass(frozen=True)
class ChartAtlas:
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be nonnegative")

    @property
    def surface(self) -> Hirzebruch:
        return Hirzebruch(self.d)

    def _base_in(self, chart: str) -> MonomialMap:
        """(x1, t1) written in the coordinates of ``chart``."""
        d = self.d
        images = {
            "x1t1": ((1, 0), (0, 1)),
            "y1t1": ((-1, 0), (0, 1)),
            "x2t2": ((1, -d), (0, -1)),
            "y2t2": ((-1, -d), (0, -1)),
        }[chart]
        return MonomialMap(images, VARIABLES[chart])

    def substitution(self, src: str, dst: str) -> MonomialMap:
        """Coordinates of ``src`` written in the coordinates of ``dst``."""
        to_base = _inverse(self._base_in(src), VARIABLES["x1t1"])
        return to_base.compose(self._base_in(dst))

    def coordinates(self, chart: str, field, over: str) -> tuple[RationalFunction, RationalFunction]:
        """The coordinates of ``chart`` as rational functions on ``over``."""
        M = self.substitution(chart, over)
        return M.coordinate(0, field), M.coordinate(1, field)


def transport(atlas: ChartAtlas, src: str, dst: str, A: RationalFunction, B: RationalFunction):
    """Components on ``dst`` of the field A d/du + B d/dv given on ``src``."""
    if src == dst:
        return A, B
    p, q = atlas.coordinates(dst, A.field, src)
    Ap = A * p.derivative(0) + B * p.derivative(1)
    Bq = A * q.derivative(0) + B * q.derivative(1)
    back = atlas.substitution(src, dst)
    return back.apply(Ap), back.apply(Bq)


class RationalVectorField:
    def __init__(self, atlas: ChartAtlas, A: RationalFunction, B: RationalFunction, label: str = ""):
        if A.variables != VARIABLES["x1t1"] or B.variables != VARIABLES["x1t1"]:
            raise ValueError("base components must be written in (x1, t1)")
        if A.is_zero() and B.is_zero():
            raise FoliationError("the zero vector field")
        self.atlas = atlas
        self.label = label
        self.components = {c: transport(atlas, "x1t1", c, A, B) for c in CHARTS}

    @property
    def field(self):
        return self.components["x1t1"][0].field

    @property
    def d(self) -> int:
        return self.atlas.d

    def is_consistent(self) -> bool:
        """Every pair of charts agrees under the transition maps."""
        for s in CHARTS:
            for t in CHARTS:
                if transport(self.atlas, s, t, *self.components[s]) != self.components[t]:
                    return False
        return True


def check_additive(v: RationalVectorField) -> bool:
    """v(v(u)) = v(v(w)) = 0 for the coordinates (u, w) of every chart."""
    if v.field.characteristic != 2:
        raise FoliationError("additivity is checked in characteristic 2")
    for A, B in v.components.values():
        for comp in (A, B):
            if not (A * comp.derivative(0) + B * comp.derivative(1)).is_zero():
                return False
    return True


@dataclass(frozen=True)
class Saturation:
    factor: RationalFunction
    a: ChartPolynomial
    b: ChartPolynomial


def saturate(A: RationalFunction, B: RationalFunction) -> Saturation:
    """Write (A, B) = h * (a, b) with a, b coprime polynomials."""
    D = lcm(A.den, B.den)
    nA = A.num * exact_quotient(D, A.den)
    nB = B.num * exact_quotient(D, B.den)
    N = gcd(nA, nB)
    return Saturation(RationalFunction(N, D), exact_quotient(nA, N), exact_quotient(nB, N))


def _saturations(v: RationalVectorField) -> dict[str, Saturation]:
    cache = getattr(v, "_saturations", None)
    if cache is None:
        cache = {c: saturate(*v.components[c]) for c in CHARTS}
        v._saturations = cache
    return cache


def divisor_class(v: RationalVectorField) -> DivisorClass:
    """Class of the divisorial part of v.

    On the first chart v = h (a d/dx1 + b d/dt1) with (a, b) coprime.  The
    principal divisor of h is trivial in Pic, which moves all curves meeting
    the chart onto the two boundary curves {y1 = 0} = Delta0 and {t2 = 0} =
    Gamma; add the orders of v along those two curves.
    """
    sat = _saturations(v)
    h = sat["x1t1"].factor
    d = v.d
    a = h.num.degree(0) - h.den.degree(0) + sat["y1t1"].factor.order(0)
    w = h.num.weighted_degree(d, 1) - h.den.weighted_degree(d, 1)
    b = w + sat["x2t2"].factor.order(1)
    return DivisorClass(Hirzebruch(d), (a, b))


def chern_zero_count(S: SurfaceModel, D: DivisorClass) -> int:
    """Expected number of zeros, with multiplicity, of a saturated field of class D."""
    K = canonical_class(S)
    return chern_numbers(S)[1] + intersect(K, D) + intersect(D, D)


def _new_on_chart(chart: str, pt) -> bool:
    # each point of F_d is reported from the first chart (in CHARTS order) containing it
    if chart == "x1t1":
        return True
    if chart == "y1t1":
        return pt[0] == 0
    if chart == "x2t2":
        return pt[1] == 0
    return pt == (0, 0)


@dataclass(frozen=True)
class ZeroRecord:
    chart: str
    point: tuple
    multiplicity: int
    residue_degree: int
    field: str

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "point": list(self.point),
            "field": self.field,
            "multiplicity": self.multiplicity,
            "residue_degree": self.residue_degree,
        }


@dataclass(frozen=True)
class SingularityReport:
    divisor_class: DivisorClass
    zeros: tuple
    total_multiplicity: int
    expected_total: int
    case_tag: Optional[str] = None
    case_value: Optional[int] = None

    def multiplicities(self) -> list[int]:
        """Multiset of multiplicities, each orbit counted residue-degree times."""
        out = []
        for z in self.zeros:
            out.extend([z.multiplicity] * z.residue_degree)
        return sorted(out)

    @property
    def point_count(self) -> int:
        return sum(z.residue_degree for z in self.zeros)

    def to_json(self) -> dict:
        return {
            "divisor_class": self.divisor_class.to_json(),
            "zeros": [z.to_json() for z in self.zeros],
            "point_count": self.point_count,
            "total_multiplicity": self.total_multiplicity,
            "chern_count": self.expected_total,
            "case_tag": self.case_tag,
            "case_value": self.case_value,
        }


def singular_points(v: RationalVectorField, recipe: Optional["FoliationRecipe"] = None) -> SingularityReport:
    sat = _saturations(v)
    zeros = []
    for chart in CHARTS:
        s = sat[chart]
        found: list[CommonZero] = rational_points_of_system(s.a, s.b)
        for z in found:
            if _new_on_chart(chart, z.point):
                zeros.append(ZeroRecord(chart, z.point, z.multiplicity, z.residue_degree, z.field.label))
    D = divisor_class(v)
    total = sum(z.multiplicity * z.residue_degree for z in zeros)
    tag = value = None
    if recipe is not None:
        value = recipe.case_value
        tag = case_tag(value)
    return SingularityReport(D, tuple(zeros), total, chern_zero_count(D.surface, D), tag, value)


# ---------------------------------------------------------------------------
# recipes


def case_tag(value: int) -> str:
    return {0: "smooth", 4: "elliptic"}.get(value, "other")


@dataclass(frozen=True)
class FoliationRecipe:
    d: int
    a_points: tuple
    b_points: tuple
    field: GF2k

    def __post_init__(self):
        if self.d < 0 or self.d % 2:
            raise FoliationError(f"d must be even and nonnegative, got {self.d}")
        pts = list(self.a_points) + list(self.b_points)
        if len(set(pts)) != len(pts):
            raise FoliationError("marked points must be distinct and the a/b sets disjoint")
        if any(not 0 <= p < self.field.order for p in pts):
            raise FoliationError(f"marked points must be elements of {self.field.label}")
        e = 2 * self.ell - 2 * self.m + 2
        if not 0 <= e <= 5 * self.d:
            raise FoliationError(f"need 0 <= 2l - 2m + 2 <= 5d, got {e} with d={self.d}")

    @property
    def ell(self) -> int:
        return len(self.a_points)

    @property
    def m(self) -> int:
        return len(self.b_points)

    @property
    def case_value(self) -> int:
        return 5 * self.d - 2 * self.ell + 2 * self.m - 2

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "ell": self.ell,
            "m": self.m,
            "field": self.field.label,
            "a_points": list(self.a_points),
            "b_points": list(self.b_points),
            "case_value": self.case_value,
        }


def make_recipe(d: int, ell: int, m: int, field: Optional[GF2k] = None,
                a_points: Optional[Sequence[int]] = None, b_points: Optional[Sequence[int]] = None) -> FoliationRecipe:
    """Recipe with the smallest adequate field and the first field elements as defaults."""
    if ell < 0 or m < 0:
        raise FoliationError("l and m must be nonnegative")
    if field is None:
        field = smallest_field_for(ell + m)
    if field.order < ell + m:
        raise FoliationError(f"{field.label} has fewer than {ell + m} elements")
    if a_points is None and b_points is None:
        a_points, b_points = range(ell), range(ell, ell + m)
    elif a_points is None or b_points is None:
        taken = set(a_points or ()) | set(b_points or ())
        free = [c for c in range(field.order) if c not in taken]
        if a_points is None:
            a_points = free[:ell]
        else:
            b_points = free[:m]
    if len(a_points) != ell or len(b_points) != m:
        raise FoliationError("number of marked points does not match l and m")
    return FoliationRecipe(d, tuple(a_points), tuple(b_points), field)


def _square_product(F, points) -> ChartPolynomial:
    t = ChartPolynomial.monomial(F, VARIABLES["x1t1"], 0, 1)
    out = ChartPolynomial.one(F, VARIABLES["x1t1"])
    for p in points:
        out = out * (t - F.element(p)) ** 2
    return out


def build_eta(recipe: FoliationRecipe) -> RationalVectorField:
    """x1^-4 d/dx1 + psi(t1) d/dt1 with psi = prod (t1 - b_j)^2 / prod (t1 - a_i)^2."""
    F = recipe.field
    V = VARIABLES["x1t1"]
    A = RationalFunction(ChartPolynomial.one(F, V), ChartPolynomial.monomial(F, V, 4, 0))
    B = RationalFunction(_square_product(F, recipe.b_points), _square_product(F, recipe.a_points))
    return RationalVectorField(ChartAtlas(recipe.d), A, B, label=f"eta(d={recipe.d}, l={recipe.ell}, m={recipe.m})")


def remark_delta() -> RationalVectorField:
    """delta + delta on P^1 x P^1 over F_4, with delta = (x^2 + x^-4) d/dx."""
    from .algebra.fields import gf

    F = gf(2)
    V = VARIABLES["x1t1"]
    one = ChartPolynomial.one(F, V)
    x, t = ChartPolynomial.gens(F, V)
    A = RationalFunction(x ** 6 + one, x ** 4)
    B = RationalFunction(t ** 6 + one, t ** 4)
    return RationalVectorField(ChartAtlas(0), A, B, label="delta+delta")


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientReport:
    case_tag: str
    case_value: Optional[int]
    L: DivisorClass
    cover: CoverInvariants
    elliptic_points: int
    pg: int
    Ksq: int
    chi: int
    image: Optional[CanonicalImage]
    general_type: bool
    on_noether_line: bool
    admissible: bool

    def to_json(self) -> dict:
        return {
            "case_tag": self.case_tag,
            "case_value": self.case_value,
            "L": self.L.to_json(),
            "before_resolution": self.cover.to_json(),
            "elliptic_points": self.elliptic_points,
            "pg": self.pg,
            "Ksq": self.Ksq,
            "chi": self.chi,
            "image": None if self.image is None else self.image.label,
            "general_type": self.general_type,
            "on_noether_line": self.on_noether_line,
            "admissible": self.admissible,
        }


def canonical_image_for(pg: int, d: Optional[int]) -> Optional[CanonicalImage]:
    """Canonical image of a Horikawa surface whose quotient map factors over F_d (None: P^2)."""
    if d is None:
        return {3: CanonicalImage("P2", 1), 6: CanonicalImage("P2", 2)}.get(pg)
    if pg >= d + 4 and smooth_hirzebruch_admissible(pg, d):
        return CanonicalImage("F", d)
    if cone_admissible(pg, d):
        return CanonicalImage("cone", d)
    return None


def _quotient(v: RationalVectorField, elliptic: int, tag: str, value: Optional[int]) -> QuotientReport:
    S = Hirzebruch(v.d)
    K = canonical_class(S)
    D = divisor_class(v)
    half = (K - D).halve()
    L = half - K
    cov = invariants(DoubleCoverDatum(S, L))
    if 2 * cov.Ksq != intersect(K - D, K - D):
        raise FoliationError("quotient canonical class fails the degree-2 relation")
    pg, Ksq, chi = cov.pg - elliptic, cov.Ksq - 2 * elliptic, cov.chi - elliptic
    target = v.d - elliptic
    image = canonical_image_for(pg, target if target >= 0 else None)
    admissible = image is not None and any(
        h.image == image or (image.shape == "P2" and h.image.shape == "P2") for h in enumerate_horikawa(pg)
    ) if pg >= 3 else False
    return QuotientReport(
        tag, value, L, cov, elliptic, pg, Ksq, chi, image,
        general_type=image is not None, on_noether_line=Ksq == 2 * pg - 4, admissible=admissible,
    )


def quotient_invariants(recipe: FoliationRecipe, v: Optional[RationalVectorField] = None) -> QuotientReport:
    value = recipe.case_value
    if value not in (0, 4):
        raise QuotientRejected(value)
    v = build_eta(recipe) if v is None else v
    return _quotient(v, 1 if value == 4 else 0, case_tag(value), value)


def remark_quotient(v: Optional[RationalVectorField] = None, report: Optional[SingularityReport] = None) -> QuotientReport:
    """Quotient numerics of the delta + delta field; elliptic points are read off the zero list."""
    v = remark_delta() if v is None else v
    report = singular_points(v) if report is None else report
    elliptic = sum(z.residue_degree for z in report.zeros if z.multiplicity == 16)
    return _quotient(v, elliptic, "elliptic" if elliptic else "smooth", None)


# ---------------------------------------------------------------------------
# catalog

CONE_RECIPES = {4: (2, 4, 1), 5: (4, 7, 0), 6: (4, 9, 0)}


@dataclass(frozen=True)
class ConstructionPlan:
    pg: int
    image: CanonicalImage
    recipe: Optional[FoliationRecipe]
    reference: Optional[str] = None
    L: Optional[DivisorClass] = None
    verified: Optional[CoverInvariants] = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        out = {"pg": self.pg, "image": self.image.label}
        if self.recipe is not None:
            out["recipe"] = self.recipe.to_json()
        if self.reference is not None:
            out["reference"] = self.reference
            out["L"] = self.L.to_json()
            out["verified"] = self.verified.to_json()
        if self.note:
            out["note"] = self.note
        return out


def catalog_existence(pg: int, d: Optional[int]) -> ConstructionPlan:
    """A characteristic-2 construction for an admissible (pg, image).

    ``d=None`` asks for the P^2 image.  Smooth images F_d with pg - d even
    use a recipe of case value 0 on F_d; with pg - d odd, one of case value
    4 on F_{d+1}.  Cones use fixed recipes; P^2 images are references whose
    numerics are checked through the double cover.
    """
    if d is None:
        if pg not in (3, 6):
            raise FoliationError(f"no Horikawa surface with pg={pg} has canonical image P2")
        L = line(4 if pg == 3 else 5)
        inv = invariants(DoubleCoverDatum(P2, L))
        if (inv.pg, inv.Ksq) != (pg, 2 * pg - 4):
            raise FoliationError("reference invariants do not verify")  # pragma: no cover
        return ConstructionPlan(pg, canonical_image_for(pg, None), None,
                                reference="inseparable double cover of P2 (external construction)", L=L, verified=inv)
    if cone_admissible(pg, d):
        recipe = make_recipe(*CONE_RECIPES[pg])
        note = None
        if recipe.case_value not in (0, 4):
            note = f"recipe case value {recipe.case_value} lies outside the smooth/elliptic dichotomy"
        return ConstructionPlan(pg, CanonicalImage("cone", d), recipe, note=note)
    if pg < 3 or not smooth_hirzebruch_admissible(pg, d):
        raise FoliationError(f"(pg={pg}, d={d}) is not an admissible Horikawa datum")
    if d % 2 == 0:
        m = (pg + 2 - 2 * d) // 2
        ell = (5 * d + 2 * m - 2) // 2
        recipe = make_recipe(d, ell, m)
    else:
        D = d + 1
        m = (pg + 1 - 2 * d) // 2
        ell = (5 * D + 2 * m - 6) // 2
        recipe = make_recipe(D, ell, m)
    return ConstructionPlan(pg, CanonicalImage("F", d), recipe)


__all__ = [
    "ChartAtlas",
    "FoliationRecipe",
    "RationalVectorField",
    "SingularityReport",
    "build_eta",
    "catalog_existence",
    "check_additive",
    "chern_zero_count",
    "divisor_class",
    "hirzebruch_L",
    "make_recipe",
    "quotient_invariants",
    "remark_delta",
    "remark_quotient",
    "QuotientRejected",
    "singular_points",
]
