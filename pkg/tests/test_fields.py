from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from horikawa.algebra.fields import (
    QQ,
    embed,
    gf,
    is_irreducible_gf2,
    least_irreducible,
    parse_field,
    restrict,
    smallest_field_for,
)


def _brute_irreducible(m):
    # trial division by every binary polynomial of degree 1..deg/2
    n = m.bit_length() - 1
    for q in range(2, 1 << (n // 2 + 1)):
        a = m
        dq = q.bit_length() - 1
        while a.bit_length() - 1 >= dq:
            a ^= q << (a.bit_length() - 1 - dq)
        if a == 0 and q != m:
            return False
    return True


@pytest.mark.parametrize("k, modulus", [(1, 0b10), (2, 7), (3, 11), (4, 19), (8, 283)])
def test_least_irreducible_values(k, modulus):
    assert least_irreducible(k) == modulus


@pytest.mark.parametrize("k", range(1, 11))
def test_least_irreducible_against_brute_force(k):
    first = next(m for m in range(1 << k, 1 << (k + 1)) if _brute_irreducible(m))
    assert least_irreducible(k) == first


def test_irreducibility_agrees_with_brute_force():
    for m in range(2, 1 << 9):
        assert is_irreducible_gf2(m) == _brute_irreducible(m), m


ks = st.sampled_from([1, 2, 3, 4, 5, 8, 12])


@st.composite
def field_and_elements(draw, n=3):
    F = gf(draw(ks))
    return (F,) + tuple(draw(st.integers(0, F.order - 1)) for _ in range(n))


@given(field_and_elements())
def test_field_axioms(data):
    F, a, b, c = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, a) == F.zero
    assert F.mul(a, F.one) == a
    if a:
        assert F.mul(a, F.inv(a)) == F.one
        assert F.div(F.mul(a, b), a) == b


@given(field_and_elements(1))
def test_frobenius_and_sqrt(data):
    F, a = data
    assert F.mul(F.sqrt(a), F.sqrt(a)) == a
    assert F.frobenius(a, F.k) == a
    assert F.pow(a, F.order) == a
    assert F.trace(a) in (0, 1)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        gf(3).inv(0)


@given(st.sampled_from([(1, 2), (1, 4), (2, 4), (2, 6), (3, 6), (4, 8)]), st.data())
def test_embedding_is_a_ring_homomorphism(pair, data):
    small, big = gf(pair[0]), gf(pair[1])
    a = data.draw(st.integers(0, small.order - 1))
    b = data.draw(st.integers(0, small.order - 1))
    e = lambda x: embed(small, big, x)
    assert e(small.add(a, b)) == big.add(e(a), e(b))
    assert e(small.mul(a, b)) == big.mul(e(a), e(b))
    assert e(small.one) == big.one
    assert restrict(small, big, e(a)) == a


def test_embedding_is_injective():
    small, big = gf(2), gf(4)
    assert len({embed(small, big, a) for a in range(4)}) == 4


def test_embedding_requires_divisibility():
    with pytest.raises(ValueError):
        embed(gf(3), gf(4), 1)


def test_rationals():
    assert QQ.mul(QQ.element(2), QQ.inv(QQ.element(3))) == Fraction(2, 3)
    assert QQ.characteristic == 0


@pytest.mark.parametrize(
    "text, expected", [("Q", QQ), ("2^3", gf(3)), ("GF(2^4)", gf(4)), ("F16", gf(4)), ("f2", gf(1))]
)
def test_parse_field(text, expected):
    assert parse_field(text) == expected


@pytest.mark.parametrize("text", ["F6", "3^2", "R"])
def test_parse_field_rejects(text):
    with pytest.raises(ValueError):
        parse_field(text)


def test_smallest_field_for():
    assert smallest_field_for(1) == gf(1)
    assert smallest_field_for(9) == gf(4)
    assert smallest_field_for(16) == gf(4)
    assert smallest_field_for(17) == gf(5)
