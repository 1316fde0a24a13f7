import pytest
from hypothesis import given, strategies as st

from horikawa.algebra import upoly as U
from horikawa.algebra.fields import QQ, gf


@st.composite
def field_polys(draw, n=2, max_len=7):
    F = gf(draw(st.sampled_from([1, 2, 3, 4])))
    polys = [U.trim(draw(st.lists(st.integers(0, F.order - 1), max_size=max_len))) for _ in range(n)]
    return (F, *polys)


def _brute_roots(F, p):
    return sorted(x for x in F.elements() if U.evaluate(F, p, x) == 0)


@given(field_polys())
def test_divmod_reconstructs(data):
    F, p, q = data
    if not q:
        return
    quo, r = U.divmod_(F, p, q)
    assert U.add(F, U.mul(F, quo, q), r) == p
    assert U.deg(r) < U.deg(q)


@given(field_polys())
def test_gcd_divides_both(data):
    F, p, q = data
    g = U.gcd(F, p, q)
    if not g:
        assert not p and not q
        return
    assert g[-1] == 1
    assert not U.rem(F, p, g) and not U.rem(F, q, g)


@given(field_polys(1))
def test_roots_match_enumeration(data):
    F, p = data
    if not p:
        return
    assert sorted(U.roots_in_field(F, p)) == _brute_roots(F, p)


@given(field_polys(1))
def test_squarefree_decomposition_multiplies_back(data):
    F, p = data
    if len(p) < 2:
        return
    prod = [F.one]
    for f, e in U.sqf_decomposition(F, p):
        assert f[-1] == 1
        prod = U.mul(F, prod, U.pow_(F, f, e))
    assert U.monic(F, p) == prod


def test_splitting_degree():
    F = gf(1)
    # x^2 + x + 1 splits over F_4, x^3 + x + 1 over F_8, their product over F_64
    a, b = [1, 1, 1], [1, 1, 0, 1]
    assert U.splitting_degree(F, a) == 2
    assert U.splitting_degree(F, b) == 3
    assert U.splitting_degree(F, U.mul(F, a, b)) == 6
    assert U.splitting_degree(F, [0, 1]) == 1


def test_pth_root_and_derivative():
    F = gf(2)
    p = [1, 0, 3, 0, 2]
    r = U.pth_root(F, p)
    assert U.mul(F, r, r) == p
    assert U.deriv(F, p) == []


def test_over_rationals():
    p = [QQ.element(-1), QQ.element(0), QQ.element(1)]
    q = [QQ.element(1), QQ.element(1)]
    assert U.exact_div(QQ, p, q) == [QQ.element(-1), QQ.element(1)]
    with pytest.raises(Exception):
        U.exact_div(QQ, p, [QQ.element(2), QQ.element(1)])
