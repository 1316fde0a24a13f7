"""Rational functions in two variables and Laurent-monomial substitutions."""

from __future__ import annotations

from dataclasses import dataclass

from .bivariate import ChartPolynomial, exact_quotient, gcd


class RationalFunction:
    """``num / den`` in lowest terms with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: ChartPolynomial, den: ChartPolynomial | None = None):
        if den is None:
            den = ChartPolynomial.one(num.field, num.variables)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = ChartPolynomial.one(num.field, num.variables)
        else:
            g = gcd(num, den)
            if not g.is_constant():
                num, den = exact_quotient(num, g), exact_quotient(den, g)
            _, lc = den.leading()
            inv = num.field.inv(lc)
            num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @property
    def variables(self):
        return self.num.variables

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, ChartPolynomial):
            return RationalFunction(other)
        return RationalFunction(self.num._coerce(other))

    def __add__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFunction(self.num ** e, self.den ** e)
        return RationalFunction(self.den ** -e, self.num ** -e)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def derivative(self, which: int) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative(which) * d - n * d.derivative(which), d * d)

    def order(self, which: int) -> int:
        """Order of zero (negative for a pole) along ``{var_which = 0}``."""
        return self.num.valuation(which) - self.den.valuation(which)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


@dataclass(frozen=True)
class MonomialMap:
    """Laurent substitution u -> p^a q^b, v -> p^c q^e given as ((a, b), (c, e)).

    ``target`` names the new variables (p, q).
    """

    images: tuple[tuple[int, int], tuple[int, int]]
    target: tuple[str, str]

    def exponent(self, i: int, j: int) -> tuple[int, int]:
        (a, b), (c, e) = self.images
        return (a * i + c * j, b * i + e * j)

    def compose(self, after: "MonomialMap") -> "MonomialMap":
        """Apply ``self`` first, then substitute with ``after``."""
        return MonomialMap((after.exponent(*self.images[0]), after.exponent(*self.images[1])), after.target)

    def apply_polynomial(self, p: ChartPolynomial) -> RationalFunction:
        F = p.field
        raw = {self.exponent(i, j): c for (i, j), c in p.terms.items()}
        if not raw:
            return RationalFunction(ChartPolynomial.zero(F, self.target))
        lo_p = min(0, min(m[0] for m in raw))
        lo_q = min(0, min(m[1] for m in raw))
        num = ChartPolynomial(F, self.target, {(i - lo_p, j - lo_q): c for (i, j), c in raw.items()})
        den = ChartPolynomial.monomial(F, self.target, -lo_p, -lo_q)
        return RationalFunction(num, den)

    def apply(self, r: RationalFunction) -> RationalFunction:
        return self.apply_polynomial(r.num) / self.apply_polynomial(r.den)

    def coordinate(self, which: int, field) -> RationalFunction:
        """The image of the ``which``-th source coordinate."""
        return _laurent(field, self.target, self.images[which])


def _laurent(field, variables, e) -> RationalFunction:
    i, j = e
    num = ChartPolynomial.monomial(field, variables, max(i, 0), max(j, 0))
    den = ChartPolynomial.monomial(field, variables, max(-i, 0), max(-j, 0))
    return RationalFunction(num, den)
