"""Picard lattices of the minimal rational surfaces P^2 and F_d.

On P^2 the basis is the line class H with H^2 = 1.  On F_d the basis is
(Delta0, Gamma): the negative section with Delta0^2 = -d and a fibre with
Gamma^2 = 0, Delta0.Gamma = 1.  On F_0 the two rulings are kept apart by
basis order and exchanged explicitly with :func:`swap_rulings`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class ProjectivePlane:
    rank = 1

    @property
    def name(self) -> str:
        return "P2"

    def gram(self):
        return ((1,),)

    def __str__(self):
        return "P2"


@dataclass(frozen=True)
class Hirzebruch:
    d: int
    rank = 2

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 0:
            raise ValueError(f"Hirzebruch surface needs an integer d >= 0, got {self.d!r}")

    @property
    def name(self) -> str:
        return f"F{self.d}"

    def gram(self):
        return ((-self.d, 1), (1, 0))

    def __str__(self):
        return f"F{self.d}"


SurfaceModel = Union[ProjectivePlane, Hirzebruch]
P2 = ProjectivePlane()


def parse_surface(text: str) -> SurfaceModel:
    """Accepts ``P2`` and ``F:d`` / ``Fd``."""
    s = text.strip()
    if s.upper() in ("P2", "P^2"):
        return P2
    m = re.fullmatch(r"[Ff]:?(\d+)", s)
    if m:
        return Hirzebruch(int(m.group(1)))
    raise ValueError(f"unknown surface {text!r}; expected P2 or F:d")


class SurfaceMismatch(ValueError):
    pass


@dataclass(frozen=True)
class DivisorClass:
    surface: SurfaceModel
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.surface.rank:
            raise ValueError(
                f"{self.surface} has Picard rank {self.surface.rank}, got {len(coeffs)} coefficients"
            )
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in coeffs):
            raise TypeError(f"divisor coefficients must be integers, got {coeffs!r}")
        object.__setattr__(self, "coeffs", coeffs)

    def _same(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.surface != self.surface:
            raise SurfaceMismatch(f"classes live on {self.surface} and {other.surface}")

    def __add__(self, other):
        self._same(other)
        return DivisorClass(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return DivisorClass(self.surface, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivisorClass(self.surface, tuple(-a for a in self.coeffs))

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return DivisorClass(self.surface, tuple(n * a for a in self.coeffs))

    __rmul__ = __mul__

    def halve(self) -> "DivisorClass":
        if any(c % 2 for c in self.coeffs):
            raise ValueError(f"{self} is not divisible by 2 in the Picard lattice")
        return DivisorClass(self.surface, tuple(c // 2 for c in self.coeffs))

    def dot(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        if isinstance(self.surface, ProjectivePlane):
            return f"{self.coeffs[0]}H"
        a, b = self.coeffs
        return f"{a}D0{'+' if b >= 0 else '-'}{abs(b)}G"

    def to_json(self) -> dict:
        return {"surface": self.surface.name, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "DivisorClass":
        return cls(parse_surface(data["surface"]), tuple(int(c) for c in data["coeffs"]))


def divisor(surface: SurfaceModel, *coeffs: int) -> DivisorClass:
    return DivisorClass(surface, tuple(coeffs))


def line(n: int = 1) -> DivisorClass:
    return DivisorClass(P2, (n,))


def delta0(d: int) -> DivisorClass:
    return DivisorClass(Hirzebruch(d), (1, 0))


def fibre(d: int) -> DivisorClass:
    return DivisorClass(Hirzebruch(d), (0, 1))


def intersect(D1: DivisorClass, D2: DivisorClass) -> int:
    D1._same(D2)
    g = D1.surface.gram()
    a, b = D1.coeffs, D2.coeffs
    return sum(a[i] * g[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))


def canonical_class(S: SurfaceModel) -> DivisorClass:
    if isinstance(S, ProjectivePlane):
        return DivisorClass(S, (-3,))
    return DivisorClass(S, (-2, -(S.d + 2)))


def structure_class(S: SurfaceModel) -> DivisorClass:
    """The zero class (structure sheaf)."""
    return DivisorClass(S, (0,) * S.rank)


def chern_numbers(S: SurfaceModel) -> tuple[int, int]:
    """(c1^2, c2); c2 from Noether's formula with chi(O) = 1."""
    K = canonical_class(S)
    c1sq = intersect(K, K)
    return c1sq, 12 - c1sq


def swap_rulings(D: DivisorClass) -> DivisorClass:
    """Exchange the two rulings of F_0 = P^1 x P^1."""
    if not (isinstance(D.surface, Hirzebruch) and D.surface.d == 0):
        raise ValueError("ruling swap is only defined on F_0")
    a, b = D.coeffs
    return DivisorClass(D.surface, (b, a))


@dataclass(frozen=True)
class CanonicalImage:
    """Canonical image of a Horikawa surface.

    ``shape`` is ``"P2"`` (with ``degree`` 1 or 2, the Veronese embedding
    degree), ``"F"`` (smooth F_d, ``degree`` = d) or ``"cone"`` (cone over
    a rational normal curve of the given degree, resolved by F_degree).
    """

    shape: str
    degree: int

    def __post_init__(self):
        if self.shape not in ("P2", "F", "cone"):
            raise ValueError(f"unknown canonical image shape {self.shape!r}")
        if self.shape == "P2" and self.degree not in (1, 2):
            raise ValueError("P2 is embedded by |H| or |2H|")
        if self.shape == "cone" and self.degree < 2:
            raise ValueError("cone over a rational normal curve needs degree >= 2")
        if self.shape == "F" and self.degree < 0:
            raise ValueError("F_d needs d >= 0")

    @property
    def desingularisation(self) -> SurfaceModel:
        if self.shape == "P2":
            return P2
        return Hirzebruch(self.degree)

    @property
    def d(self):
        return None if self.shape == "P2" else self.degree

    @property
    def smooth(self) -> bool:
        return self.shape != "cone"

    @property
    def label(self) -> str:
        if self.shape == "P2":
            return "P2"
        return f"{self.shape}:{self.degree}"

    def __str__(self):
        return self.label

    def to_json(self) -> dict:
        return {"shape": self.shape, "degree": self.degree}


def parse_image(text: str) -> CanonicalImage:
    """``P2``, ``F:d`` or ``cone:d``; P2 gets its embedding degree later."""
    s = text.strip()
    if s.upper() in ("P2", "P^2"):
        return CanonicalImage("P2", 1)
    m = re.fullmatch(r"(?i)(F|cone):?(\d+)", s)
    if not m:
        raise ValueError(f"unknown canonical image {text!r}; expected P2, F:d or cone:d")
    shape = "F" if m.group(1).upper() == "F" else "cone"
    return CanonicalImage(shape, int(m.group(2)))
