from math import comb

import pytest
from hypothesis import given, strategies as st

from horikawa.cohomology import (
    OracleLimitExceeded,
    cech_limit,
    cech_oracle,
    cohomology,
    euler_characteristic,
    h0,
    h1,
    h1_vanishes,
    vanishing_region,
)
from horikawa.lattice import P2, Hirzebruch, canonical_class, divisor, line

ds = st.integers(0, 6)
aa = st.integers(-8, 8)
bb = st.integers(-20, 20)


def _count_sections(d, a, b):
    # monomials x^i t^j of a section of a*D0 + b*G: 0 <= k <= a fibre degrees
    return sum(1 for k in range(a + 1) for j in range(b - k * d + 1)) if a >= 0 else 0


@pytest.mark.parametrize("d", range(6))
def test_closed_form_matches_cech_on_grid(d):
    S = Hirzebruch(d)
    for a in range(-6, 7):
        for b in range(-12, 13):
            D = divisor(S, a, b)
            assert cohomology(S, D) == cech_oracle(S, D), D


def test_plane_grid():
    for n in range(-12, 13):
        v = cech_oracle(P2, line(n))
        assert v == cohomology(P2, line(n))
        assert v.h0 == (comb(n + 2, 2) if n >= 0 else 0)
        assert v.h1 == 0


@given(ds, aa, bb)
def test_h0_counts_monomials(d, a, b):
    assert h0(Hirzebruch(d), divisor(Hirzebruch(d), a, b)) == _count_sections(d, a, b)


@given(ds, aa, bb)
def test_cech_over_f2_agrees(d, a, b):
    S = Hirzebruch(d)
    D = divisor(S, a, b)
    assert cech_oracle(S, D, characteristic=2) == cech_oracle(S, D)


@given(ds, aa, bb)
def test_serre_duality(d, a, b):
    S = Hirzebruch(d)
    D = divisor(S, a, b)
    v, w = cohomology(S, D), cohomology(S, canonical_class(S) - D)
    assert (v.h0, v.h1, v.h2) == (w.h2, w.h1, w.h0)


@given(ds, aa, bb)
def test_riemann_roch(d, a, b):
    S = Hirzebruch(d)
    D = divisor(S, a, b)
    v = cohomology(S, D)
    assert v.h0 - v.h1 + v.h2 == v.chi == euler_characteristic(S, D)


@given(ds, aa, bb)
def test_sharp_h1_criterion(d, a, b):
    S = Hirzebruch(d)
    D = divisor(S, a, b)
    assert h1_vanishes(S, D) == (h1(S, D) == 0)


def test_sharp_criterion_on_oracle_grid():
    for d in range(6):
        S = Hirzebruch(d)
        for a in range(-6, 7):
            for b in range(-12, 13):
                D = divisor(S, a, b)
                assert h1_vanishes(S, D) == (cech_oracle(S, D).h1 == 0), D


@pytest.mark.parametrize(
    "d, a, b, vec",
    [
        (0, 1, 1, (4, 0, 0, 4)),
        (1, 2, 0, (1, 1, 0, 0)),
        (2, 0, -2, (0, 1, 0, -1)),
        (3, -2, -5, (0, 0, 1, 1)),
        (1, 3, 5, (18, 0, 0, 18)),
        (4, 3, 10, (21, 1, 0, 20)),
    ],
)
def test_spot_values(d, a, b, vec):
    S = Hirzebruch(d)
    assert cohomology(S, divisor(S, a, b)).astuple() == vec


def test_stated_vanishing_regions_have_no_h1():
    # The two regions a, b >= 0 and (a <= -2, b <= -(d+2)) are claimed h1-acyclic.
    # (F_1, 2D0) already has h1 = 1, so this fails by design.
    offenders = []
    for d in range(6):
        S = Hirzebruch(d)
        for a in range(-6, 7):
            for b in range(-12, 13):
                D = divisor(S, a, b)
                if vanishing_region(S, D) and cech_oracle(S, D).h1:
                    offenders.append((d, a, b))
    assert offenders == []


def test_vanishing_region_labels():
    S = Hirzebruch(2)
    assert vanishing_region(S, divisor(S, 1, 0)) == "effective"
    assert vanishing_region(S, divisor(S, -2, -4)) == "dual"
    assert vanishing_region(S, divisor(S, -2, -3)) is None
    assert vanishing_region(P2, line(-7)) == "P2"


def test_oracle_limit(monkeypatch):
    S = Hirzebruch(1)
    assert cech_limit() == 30
    cech_oracle(S, divisor(S, 1, 30))
    with pytest.raises(OracleLimitExceeded):
        cech_oracle(S, divisor(S, 1, 31))
    cech_oracle(S, divisor(S, 1, 31), limit=31)
    monkeypatch.setenv("HORIKAWA_CECH_LIMIT", "40")
    assert cech_oracle(S, divisor(S, 1, 31)) == cohomology(S, divisor(S, 1, 31))


def test_oracle_characteristic_check():
    with pytest.raises(ValueError):
        cech_oracle(P2, line(1), characteristic=3)
