import pytest
import sympy
from hypothesis import assume, given, strategies as st

from conftest import polynomials
from horikawa.algebra.bivariate import (
    ChartPolynomial,
    divides,
    exact_quotient,
    gcd,
    parse_polynomial,
    resultant,
    square_part,
    squarefree_decomposition,
)
from horikawa.algebra.fields import QQ, embedder, gf

V = ("u", "v")


def P(text, F=gf(1)):
    return parse_polynomial(text, F, V)


@st.composite
def same_field(draw, n=3, **kw):
    F = gf(draw(st.integers(1, 3)))
    return [draw(polynomials(field=F, **kw)) for _ in range(n)]


@given(same_field())
def test_ring_laws(ps):
    a, b, c = ps
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ChartPolynomial.zero(a.field, V)


@given(same_field(2))
def test_gcd_properties(ps):
    a, b = ps
    assume(not (a.is_zero() and b.is_zero()))
    g = gcd(a, b)
    assert divides(g, a) and divides(g, b)
    if not a.is_zero() and not b.is_zero():
        # cofactors share nothing
        assert gcd(exact_quotient(a, g), exact_quotient(b, g)).is_constant()


@given(same_field(2, max_deg=2, max_terms=3))
def test_gcd_recovers_common_factor(ps):
    a, h = ps
    assume(not a.is_zero() and not h.is_zero())
    g = gcd(a * h, h * h)
    assert divides(h, g)


@pytest.mark.parametrize(
    "text, part",
    [
        ("u^2*v^2 + u^2 + v^2 + 1", "u*v + u + v + 1"),
        ("u^4*v", "u^2"),
        ("u^3 + u^2*v + u + v", "u + 1"),
        ("u^2 + v", "1"),
        ("u^3 + u^2", "u"),
    ],
)
def test_square_part_examples(text, part):
    assert square_part(P(text)) == P(part)


@given(same_field(2, max_deg=2, max_terms=3))
def test_square_part_invariants(ps):
    f, h = ps
    assume(not f.is_zero() and not h.is_zero())
    p = h * h * f
    s = square_part(p)
    assert divides(s * s, p)
    assert divides(h.monic(), s)
    # maximality: the cofactor has no repeated factor
    rest = exact_quotient(p, s * s)
    assert square_part(rest).is_constant()


@given(polynomials(field=gf(1), max_deg=3, max_terms=5), st.sampled_from([2, 3, 4]))
def test_square_part_stable_under_extension(p, k):
    assume(not p.is_zero())
    big = gf(k)
    e = embedder(gf(1), big)
    assert square_part(p).map_coefficients(e, big) == square_part(p.map_coefficients(e, big))


@given(polynomials(field=gf(2), max_deg=3, max_terms=4))
def test_squarefree_decomposition_multiplies_back(p):
    assume(not p.is_constant())
    prod = ChartPolynomial.one(p.field, V)
    for f, e in squarefree_decomposition(p):
        prod = prod * f ** e
    assert prod == p.monic()


def _sympy_resultant(p, q, which):
    """Determinant of the Sylvester matrix, coefficients in the other variable."""
    other = sympy.Symbol("w")

    def coeffs(r):
        n = r.degree(which)
        col = [0] * (n + 1)
        for m, c in r.terms.items():
            col[m[which]] += int(c) * other ** m[1 - which]
        return col[::-1]

    a, b = coeffs(p), coeffs(q)
    n, m = len(a) - 1, len(b) - 1
    rows = [[0] * i + a + [0] * (m - 1 - i) for i in range(m)]
    rows += [[0] * i + b + [0] * (n - 1 - i) for i in range(n)]
    det = sympy.expand(sympy.Matrix(rows).det())
    out = sympy.Poly(det, other).all_coeffs()[::-1]
    while out and out[-1] == 0:
        out.pop()
    return [int(c) for c in out]


@st.composite
def integer_pair(draw):
    """Integer polynomials in u whose leading u-coefficient is an odd constant."""
    out = []
    for _ in range(2):
        n = draw(st.integers(1, 3))
        terms = {(n, 0): draw(st.sampled_from([-3, -1, 1, 3]))}
        for _ in range(draw(st.integers(0, 4))):
            m = (draw(st.integers(0, n - 1)), draw(st.integers(0, 3)))
            terms[m] = draw(st.integers(-3, 3))
        out.append(ChartPolynomial(QQ, V, {m: QQ.element(c) for m, c in terms.items()}))
    return out


@given(integer_pair())
def test_resultant_matches_sympy_over_q(pq):
    p, q = pq
    assert [int(c) for c in resultant(p, q, 0)] == _sympy_resultant(p, q, 0)


@given(integer_pair())
def test_resultant_reduces_mod_2(pq):
    p, q = pq
    F = gf(1)
    red = lambda r: ChartPolynomial(F, V, {m: int(c) % 2 for m, c in r.terms.items()})
    expected = [c % 2 for c in _sympy_resultant(p, q, 0)]
    while expected and expected[-1] == 0:
        expected.pop()
    assert list(resultant(red(p), red(q), 0)) == expected


def test_resultant_detects_common_root():
    F = gf(2)
    p = parse_polynomial("u^2 + u*v + 1", F, V)
    q = parse_polynomial("u + v", F, V)
    r = resultant(p, q, 0)
    # u = v gives 2v^2 + 1 = 1 in characteristic 2: no common root
    assert r == [1]


def test_parse_and_format_round_trip():
    F = gf(3)
    p = parse_polynomial("3*u^2*v + 5*v + 1", F, V)
    assert parse_polynomial(str(p), F, V) == p
    q = parse_polynomial("-u + 1/2*v", QQ, V)
    assert parse_polynomial(str(q), QQ, V) == q
    with pytest.raises(ValueError):
        parse_polynomial("w + 1", F, V)


def test_incompatible_operands():
    with pytest.raises(ValueError):
        P("u") + parse_polynomial("u", gf(2), V)


def test_translate_and_derivative():
    F = gf(2)
    p = parse_polynomial("u^3 + v^2", F, V)
    assert p.translate(1, 0) == parse_polynomial("u^3 + u^2 + u + 1 + v^2", F, V)
    assert p.derivative(0) == parse_polynomial("u^2", F, V)
    assert p.derivative(1).is_zero()
