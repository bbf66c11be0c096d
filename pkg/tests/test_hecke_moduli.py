import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hfl.germ import Germ, IndeterminateError, parse_germ
from hfl.hecke_moduli import (
    BOTTOM,
    ChartId,
    DegenerateDatum,
    EvenHeckeParam,
    GroupElement,
    HeckeError,
    HeckeParam,
    act,
    atlas,
    canonicalize,
    chart_image,
    chart_inverse_order5,
    chart_polynomials,
    chart_preimage,
    charts,
    even_degeneration_type,
    even_extension_datum,
    from_u,
    gluing_check,
    in_chart,
    normalising_element,
    order5_u_sign,
    parse_chart,
    same_orbit,
    stratum_of,
    strata_count,
    u_coordinate,
)
from hfl.oracles import rand_even_unit, rand_member
from hfl.wps import WPSPoint, is_orbifold_singular


def g(text):
    return parse_germ(text)


def hp(d, a, b):
    return HeckeParam.make(d, g(a), g(b))


def P(*c):
    return WPSPoint.make((1, 1, 2), c)


N10 = ChartId("N", 0, 1)


def test_act_example():
    p = hp(5, "v=1;t=5;1", "v=0;t=5;1")
    q = act(GroupElement.make(g("v=0;t=5;1,0,1"), 5), p)
    assert q.a.terms() == {1: 1, 3: 1} and q.b.terms() == {0: 1, 2: 1}


def test_act_mismatched_d():
    with pytest.raises(HeckeError):
        act(GroupElement.scalar(2, 7), hp(5, "v=1;t=5;1", "v=0;t=5;1"))


def test_group_element_checks():
    with pytest.raises(HeckeError):
        GroupElement.make(g("v=0;t=5;1,1"), 5)
    with pytest.raises(HeckeError):
        GroupElement.make(g("v=2;t=5;1"), 5)


def test_stratum_of():
    assert stratum_of(hp(5, "v=1;t=5;1", "v=0;t=5;1")) == 0
    assert stratum_of(hp(5, "v=3;t=5;1", "v=2;t=5;1")) == 2
    assert stratum_of(HeckeParam.make(5, Germ.zero(5), g("v=2;t=5;1"))) == 2
    assert stratum_of(HeckeParam.make(5, g("v=3;t=5;1"), g("v=4;t=5;1"))) == BOTTOM


def test_parity_violation():
    with pytest.raises(HeckeError, match="parity"):
        hp(5, "v=0;t=5;1", "v=0;t=5;1")
    with pytest.raises(HeckeError):
        hp(4, "v=1;t=5;1", "v=0;t=5;1")


def test_window_too_short():
    with pytest.raises(IndeterminateError):
        hp(5, "v=1;t=3;1", "v=0;t=3;1")


def test_canonicalize_examples():
    c = canonicalize(hp(5, "v=1;t=5;4", "v=0;t=5;2,0,3"))
    assert c.a.terms() == {1: 2, 3: -3} and c.b.terms() == {0: 1}
    c = canonicalize(hp(5, "v=1;t=5;1", "v=0;t=5;1"))
    assert c.a.terms() == {1: 1} and c.b.terms() == {0: 1}
    c = canonicalize(HeckeParam.make(5, Germ.zero(5), g("v=2;t=5;3")))
    assert c.a.is_zero() and c.b.terms() == {2: 1}


def test_u_examples():
    assert u_coordinate(hp(5, "v=1;t=5;2", "v=0;t=5;1")) == (2, 0)
    assert u_coordinate(hp(5, "v=1;t=5;4", "v=0;t=5;2,0,3")) == (2, -3)
    with pytest.raises(HeckeError, match="point stratum"):
        u_coordinate(HeckeParam.make(5, Germ.zero(5), g("v=2;t=5;1")))


def test_strata_count():
    assert [strata_count(d) for d in (1, 3, 5, 7)] == [1, 2, 3, 4]


def test_chart_polynomials_order5():
    # (x0 : x1 : x1 x2 - x0 x3)
    polys = chart_polynomials(5, N10)
    assert polys[0] == ((1, ((0, 1),)),)
    assert polys[1] == ((1, ((1, 1),)),)
    assert sorted(polys[2]) == [(-1, ((0, 1), (3, 1))), (1, ((1, 1), (2, 1)))]


def test_chart_image_example():
    y = chart_image(N10, hp(5, "v=1;t=5;4", "v=0;t=5;2,0,3"))
    assert y.coords == (2, 4, 12)
    assert y == P(1, 2, 3)


def test_chart_membership_error():
    with pytest.raises(HeckeError, match="chart membership"):
        chart_image(N10, hp(5, "v=3;t=5;1", "v=0;t=5;1"))


def test_inverse_order5_examples():
    p = chart_inverse_order5(P(1, 2, 3))
    assert p.a.terms() == {1: 4} and p.b.terms() == {0: 2, 2: 3}
    p = chart_inverse_order5(P(1, 1, 0))
    assert p.a.terms() == {1: 1} and p.b.terms() == {0: 1}
    bottom = chart_inverse_order5(P(0, 0, 1))
    assert bottom.n == 2 and bottom.a.is_zero()
    with pytest.raises(HeckeError, match="excluded"):
        chart_inverse_order5(P(1, 0, 1))


def test_order5_sign_flag():
    rep = order5_u_sign()
    assert rep["z3_sign_derived"] == "-"
    assert rep["printed_sign_matches"] is False


def test_chart_list_order5():
    assert [c.label() for c in charts(5)] == ["V0", "V1", "V2", "N(1,0)", "3N(2,0)", "N(2,1)"]
    assert parse_chart("3N(2,0)") == ChartId("kN", 0, 2, 3)
    with pytest.raises(HeckeError):
        ChartId("N", 0, 2).validate(5)


def test_atlas_weights():
    entries = {e["chart"]: e["weights"] for e in atlas(7)}
    assert entries["N(1,0)"] == [1, 1, 2, 3]
    assert entries["V0"] == [1, 1, 1, 1]


def test_gluing_printed_formula_needs_sign_flip():
    p = HeckeParam.from_coeffs(7, {0: 1, 1: 2, 2: 3, 3: 5, 5: 7})
    rep = gluing_check(ChartId("V", 0), N10, p)
    assert rep["pass"] and rep["transition_ok"]
    assert rep["printed_formula"] == {
        "printed_matches_derived": False,
        "printed_matches_after_sign_flip": True,
    }


def test_gluing_disjoint_precondition():
    p = hp(5, "v=1;t=5;1", "v=0;t=5;1")
    with pytest.raises(HeckeError, match="precondition"):
        gluing_check(ChartId("V", 1), N10, p)


def test_even_datum_examples():
    one = Germ.one(4)
    p = EvenHeckeParam.make(2, Germ.zero(4), one)
    assert even_extension_datum(p).terms() == {0: 1}
    p = EvenHeckeParam.make(2, Germ.monomial(1, 4), one)
    assert even_extension_datum(p).terms() == {0: 1, 1: 2}
    with pytest.raises(DegenerateDatum, match="pole"):
        even_extension_datum(EvenHeckeParam.make(2, one, Germ.poly([1, 1], 4)))
    with pytest.raises(DegenerateDatum) as e:
        even_extension_datum(EvenHeckeParam.make(1, one, one))
    assert e.value.classification == (0, 1, 0)


def test_even_degeneration_examples():
    one = Germ.one(4)
    assert even_degeneration_type(EvenHeckeParam.make(1, one, one)) == (0, 1, 0)
    assert even_degeneration_type(EvenHeckeParam.make(1, one, -one)) == (0, 0, 1)
    p = EvenHeckeParam.make(2, Germ.zero(4), Germ.monomial(1, 4))
    assert even_degeneration_type(p) == (1, 0, 0)
    assert p.is_zero_class


# properties -------------------------------------------------------------------

seeds = st.integers(0, 10 ** 6)


@given(seeds, st.sampled_from([3, 5, 7, 9]))
def test_canonical_form_is_orbit_invariant(seed, d):
    rng = random.Random(seed)
    c = rng.choice(charts(d))
    p = rand_member(rng, d, c)
    h = GroupElement.make(rand_even_unit(rng, d), d)
    assert canonicalize(act(h, p)) == canonicalize(p)
    assert canonicalize(act(normalising_element(p), p)) == canonicalize(p)


@given(seeds, st.sampled_from([5, 7, 9]))
def test_image_roundtrip(seed, d):
    rng = random.Random(seed)
    c = rng.choice([c for c in charts(d) if c.kind != "V"])
    p = rand_member(rng, d, c)
    y = chart_image(c, p)
    assert not is_orbifold_singular(y)
    q = chart_preimage(c, y, d)
    assert q is not None and same_orbit(p, q)


@given(seeds, st.sampled_from([5, 7, 9]))
def test_u_roundtrip(seed, d):
    rng = random.Random(seed)
    n = rng.randrange(0, (d - 1) // 2)
    p = rand_member(rng, d, ChartId("V", n))
    assert same_orbit(p, from_u(d, n, u_coordinate(p)))


@given(seeds)
def test_preimage_outside_image_is_none(seed):
    rng = random.Random(seed)
    # x_1 = 0 never lies in N(1,0)
    y = WPSPoint.make((1, 1, 2), (F(rng.randint(1, 5)), 0, F(rng.randint(-3, 3))))
    assert chart_preimage(N10, y, 5) is None
