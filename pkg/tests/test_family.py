import pytest
from hypothesis import given, settings, strategies as st

from horikawa.algebra.bivariate import ChartPolynomial, parse_polynomial, square_part
from horikawa.algebra.fields import QQ, gf
from horikawa.classify import enumerate_horikawa
from horikawa.cohomology import cohomology
from horikawa.cover import DoubleCoverDatum, SectionOutOfBounds, in_h0, invariants
from horikawa.family import (
    FamilyDatum,
    LiftRefused,
    draw_f2_cover,
    draw_family,
    family_normality,
    is_separable,
    lambda_sweep,
    lift_check,
    lift_polynomial,
    normality_diagnostics,
)
from horikawa.lattice import P2, Hirzebruch, divisor, line

F2 = gf(1)
V = ("x", "t")


def P(text, F=F2):
    return parse_polynomial(text, F, V)


def test_normality_examples():
    n = normality_diagnostics(P("0"), P("t^2*x + x"))
    assert not n.ok and n.witness == P("t + 1")
    assert normality_diagnostics(P("x"), P("t")).ok
    n = normality_diagnostics(P("x"), P("x^2*t"))
    assert not n.ok and n.witness == P("x")
    assert n.to_json()["status"] == "singular_along_divisor"
    # h^2 | g but h does not divide f: separable and normal
    assert normality_diagnostics(P("t"), P("x^2*t + x^2")).ok
    assert not normality_diagnostics(P("x"), P("0")).ok


def test_normality_per_chart():
    ok = {"a": P("x"), "b": P("t")}
    assert normality_diagnostics(ok, {"a": P("t"), "b": P("x")}).ok
    bad = normality_diagnostics({"a": P("0"), "b": P("0")}, {"a": P("x"), "b": P("x^2")})
    assert not bad.ok and bad.chart == "b"
    with pytest.raises(ValueError):
        normality_diagnostics({"a": P("x")}, {"b": P("x")})


def _family(pg, label, seed=0):
    h = next(h for h in enumerate_horikawa(pg) if h.image.label == label)
    return h, draw_family(h.base, h.L, F2, seed=seed)


def test_f0_example_sweep():
    h, drawn = _family(4, "F:0")
    rows = lambda_sweep(drawn.family, [1, 0])
    assert [r.lam for r in rows] == [0, 1]
    assert [r.separable for r in rows] == [False, True]
    for r in rows:
        assert (r.invariants.Ksq, r.invariants.pg) == (4, 4)
    assert rows[0].normality.ok
    assert drawn.draws >= 1


def test_separability_definition():
    h, drawn = _family(6, "F:2")
    fam = drawn.family
    assert not is_separable(fam.at(0))
    assert is_separable(fam.at(1))
    zero_s = FamilyDatum(fam.base, fam.L, ChartPolynomial.zero(F2, fam.s.variables), fam.t, 1)
    assert not is_separable(zero_s)


def test_non_normal_member_is_flagged():
    S = Hirzebruch(0)
    L = divisor(S, 3, 3)
    V1 = ("x1", "t1")
    s = parse_polynomial("x1*t1 + 1", F2, V1)
    t = parse_polynomial("x1^2 + 1", F2, V1)  # a square: z^2 + t is singular along x1 = 1
    fam = FamilyDatum(S, L, s, t, 0)
    n = family_normality(fam)
    assert not n.ok
    assert square_part(t) == parse_polynomial("x1 + 1", F2, V1)


def test_family_sections_checked():
    S = Hirzebruch(0)
    V1 = ("x1", "t1")
    with pytest.raises(SectionOutOfBounds):
        FamilyDatum(S, divisor(S, 1, 1), parse_polynomial("x1^2", F2, V1), parse_polynomial("1", F2, V1), 0)
    with pytest.raises(ValueError):
        one = ChartPolynomial.one(QQ, V1)
        FamilyDatum(S, divisor(S, 1, 1), one, one, 0)


def _sweepable(top=8):
    return [h for pg in range(3, top + 1) for h in enumerate_horikawa(pg) if h.image.smooth]


@settings(max_examples=20)
@given(st.sampled_from(_sweepable()), st.integers(0, 10_000), st.sampled_from([1, 2]))
def test_invariants_constant_across_lambda(h, seed, k):
    F = gf(k)
    fam = draw_family(h.base, h.L, F, seed=seed).family
    values = list(range(F.order))
    rows = lambda_sweep(fam, values)
    inv = {(r.invariants.Ksq, r.invariants.pg, r.invariants.chi) for r in rows}
    assert inv == {(2 * h.pg - 4, h.pg, h.pg + 1)}
    for r in rows:
        assert r.separable == (r.lam != 0)
    assert rows[0].normality.ok


def test_draws_are_seeded():
    h = enumerate_horikawa(5)[0]
    a = draw_family(h.base, h.L, seed=7)
    b = draw_family(h.base, h.L, seed=7)
    assert a.family.s == b.family.s and a.family.t == b.family.t and a.draws == b.draws
    f = a.family
    assert in_h0(h.base, h.L, f.s) and in_h0(h.base, 2 * h.L, f.t)


def test_lift_double_plane():
    c = draw_f2_cover(P2, line(4), seed=0)
    rep = lift_check(c)
    assert rep.passed
    F2vec, Qvec = rep.bundles["L"]
    assert F2vec.h0 == Qvec.h0 == 15
    assert rep.char0 == (2, 3, 4)


def test_lift_pg6_datum():
    S = Hirzebruch(2)
    rep = lift_check(draw_f2_cover(S, divisor(S, 3, 7), seed=3))
    assert rep.passed
    assert all(a == b for a, b in rep.bundles.values())
    assert rep.to_json()["passed"] is True


def test_lift_refused_outside_hypothesis():
    S = Hirzebruch(2)
    assert cohomology(S, divisor(S, 1, -1)).h1 == 2
    with pytest.raises(LiftRefused):
        lift_check(DoubleCoverDatum(S, divisor(S, 1, -1)))


def test_lift_never_changes_cohomology_in_scope():
    for pg in range(3, 17):
        for h in enumerate_horikawa(pg):
            if cohomology(h.base, h.L).h1:
                continue
            rep = lift_check(draw_f2_cover(h.base, h.L, seed=pg))
            assert rep.passed, (pg, h.image.label)
            assert rep.char0 == (2 * pg - 4, pg, pg + 1)


def test_lift_polynomial():
    p = P("x^2*t + 1")
    q = lift_polynomial(p)
    assert q.field == QQ and set(q.terms) == set(p.terms) and set(q.terms.values()) == {1}
    with pytest.raises(LiftRefused):
        lift_polynomial(P("x", gf(2)))


def test_lift_uses_a_wide_enough_oracle_window():
    # 2L has coefficients beyond the default oracle bound for larger pg
    h = next(
        h
        for pg in range(3, 40)
        for h in enumerate_horikawa(pg)
        if max(abs(c) for c in (2 * h.L).coeffs) > 30 and not cohomology(h.base, h.L).h1
    )
    assert lift_check(draw_f2_cover(h.base, h.L, seed=1)).passed
