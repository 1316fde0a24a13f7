"""Admissible numerical data of Horikawa surfaces, and validation against them."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Union

from .cohomology import CohomologyError
from .cover import DoubleCoverDatum, SplittingError, invariants
from .lattice import (
    P2,
    CanonicalImage,
    DivisorClass,
    Hirzebruch,
    ProjectivePlane,
    SurfaceModel,
    line,
    swap_rulings,
)

DEFAULT_MAX_PG = 500


class InadmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class HorikawaDatum:
    pg: int
    image: CanonicalImage
    d: Optional[int]
    L: DivisorClass
    Ksq: int

    @property
    def base(self) -> SurfaceModel:
        return self.image.desingularisation

    def cover(self) -> DoubleCoverDatum:
        return DoubleCoverDatum(self.base, self.L)

    def to_json(self) -> dict:
        return {
            "pg": self.pg,
            "image": self.image.label,
            "d": self.d,
            "L": self.L.to_json(),
            "Ksq": self.Ksq,
        }


def hirzebruch_L(pg: int, d: int) -> DivisorClass:
    """3 Delta0 + (pg + 2 + 3d)/2 Gamma."""
    if (pg + 2 + 3 * d) % 2:
        raise InadmissibleError(f"pg + 2 + 3d is odd for pg={pg}, d={d}")
    return DivisorClass(Hirzebruch(d), (3, (pg + 2 + 3 * d) // 2))


def smooth_hirzebruch_admissible(pg: int, d: int) -> bool:
    return 0 <= d <= pg - 4 and (pg - d) % 2 == 0 and pg >= 2 * d - 2


def cone_admissible(pg: int, d: int) -> bool:
    return 4 <= pg <= 6 and d == pg - 2


def max_pg() -> int:
    return int(os.environ.get("HORIKAWA_MAX_PG", DEFAULT_MAX_PG))


def enumerate_horikawa(pg: int) -> list[HorikawaDatum]:
    """All admissible (canonical image, L) for the given geometric genus."""
    if pg < 3:
        raise InadmissibleError(f"Horikawa surfaces have pg >= 3, got {pg}")
    Ksq = 2 * pg - 4
    out = []
    if pg == 3:
        out.append(HorikawaDatum(3, CanonicalImage("P2", 1), None, line(4), Ksq))
    if pg == 6:
        out.append(HorikawaDatum(6, CanonicalImage("P2", 2), None, line(5), Ksq))
    for d in range(0, pg - 3):
        if smooth_hirzebruch_admissible(pg, d):
            out.append(HorikawaDatum(pg, CanonicalImage("F", d), d, hirzebruch_L(pg, d), Ksq))
    if cone_admissible(pg, pg - 2):
        d = pg - 2
        out.append(HorikawaDatum(pg, CanonicalImage("cone", d), d, hirzebruch_L(pg, d), Ksq))
    return out


def _normal_L(L: DivisorClass) -> DivisorClass:
    # on F_0 a datum and its ruling swap are the same datum
    if isinstance(L.surface, Hirzebruch) and L.surface.d == 0 and L.coeffs[0] > L.coeffs[1]:
        return swap_rulings(L)
    return L


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    datum: Optional[HorikawaDatum] = None
    reason: Optional[str] = None
    pg: Optional[int] = None

    def to_json(self) -> dict:
        if self.accepted:
            return {"verdict": "accept", "datum": self.datum.to_json()}
        return {"verdict": "reject", "reason": self.reason, "pg": self.pg}


def validate(candidate: Union[SurfaceModel, CanonicalImage], L: DivisorClass) -> Verdict:
    """Accept iff (candidate, L) appears in the enumeration for its computed pg.

    A bare ``SurfaceModel`` means that surface is itself the (smooth)
    canonical image.
    """
    if isinstance(candidate, CanonicalImage):
        image = candidate
    elif isinstance(candidate, ProjectivePlane):
        image = CanonicalImage("P2", 1)
    elif isinstance(candidate, Hirzebruch):
        image = CanonicalImage("F", candidate.d)
    else:
        raise TypeError(f"expected a surface or canonical image, got {candidate!r}")
    base = image.desingularisation
    if L.surface != base:
        return Verdict(False, reason="surface_mismatch")
    try:
        inv = invariants(DoubleCoverDatum(base, L))
    except (SplittingError, CohomologyError):
        return Verdict(False, reason="h1_nonzero")
    pg = inv.pg
    if pg < 3:
        return Verdict(False, reason="pg_below_3", pg=pg)
    L = _normal_L(L)
    for datum in enumerate_horikawa(pg):
        if datum.image.shape == image.shape and datum.L == L and (
            image.shape == "P2" or datum.image.degree == image.degree
        ):
            return Verdict(True, datum=datum, pg=pg)
    return Verdict(False, reason=_rejection_reason(image, L, pg), pg=pg)


def _rejection_reason(image: CanonicalImage, L: DivisorClass, pg: int) -> str:
    if image.shape == "P2" or L.coeffs[0] != 3:
        return "not_in_list"
    d = image.degree
    if (pg - d) % 2 or L != hirzebruch_L(pg, d):
        return "parity"
    if image.shape == "cone":
        return "cone_range" if d == pg - 2 else "cone_degree"
    if d > pg - 4:
        return "d_bound"
    if pg < 2 * d - 2:
        return "restriction"
    return "not_in_list"  # pragma: no cover


def classification_table(pg_from: int, pg_to: Optional[int] = None) -> list[dict]:
    """One row per admissible datum, with pg recomputed from cohomology."""
    pg_to = pg_from if pg_to is None else pg_to
    if pg_from < 3:
        raise InadmissibleError(f"pg must be >= 3, got {pg_from}")
    if pg_to > max_pg() or pg_to < pg_from:
        raise InadmissibleError(f"pg range {pg_from}..{pg_to} outside 3..{max_pg()}")
    rows = []
    for pg in range(pg_from, pg_to + 1):
        for datum in enumerate_horikawa(pg):
            inv = invariants(datum.cover())
            rows.append(
                {
                    "pg": pg,
                    "image": datum.image.shape,
                    "d": datum.d,
                    "L": datum.L,
                    "Ksq": datum.Ksq,
                    "pg_recomputed": inv.pg,
                    "Ksq_recomputed": inv.Ksq,
                    "h01": inv.h01,
                }
            )
    return rows


def row_counts(pg_from: int, pg_to: int) -> list[int]:
    return [len(enumerate_horikawa(pg)) for pg in range(pg_from, pg_to + 1)]


__all__ = [
    "HorikawaDatum",
    "InadmissibleError",
    "Verdict",
    "classification_table",
    "enumerate_horikawa",
    "hirzebruch_L",
    "validate",
    "P2",
]
