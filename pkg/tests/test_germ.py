from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hfl.germ import (
    INF,
    Germ,
    GermError,
    IndeterminateError,
    format_germ,
    invert,
    order,
    parity_split,
    parse_germ,
    sigma_pullback,
)

from conftest import germs, units


def z(k=1, t=6, c=1):
    return Germ.monomial(k, t, c)


def test_add_examples():
    assert (z() + (-z())).is_zero()
    s = Germ.poly([1, 0, 1], 6) + z(1, 4)
    assert s == Germ.poly([1, 1, 1], 4)
    lau = z(-1) + z(1)
    assert lau.terms() == {-1: 1, 1: 1}


def test_mul_examples():
    assert (Germ.poly([1, 1], 4) * Germ.poly([1, -1], 4)) == Germ.poly([1, 0, -1], 4)
    assert (z(-2, 8) * z(3, 8)).terms() == {1: 1}
    assert (Germ.poly([2, 0, 3], 5) * F(1, 2)).terms() == {0: 1, 2: F(3, 2)}


def test_invert_examples():
    assert invert(Germ.poly([1, 0, 1], 5)) == Germ.poly([1, 0, -1, 0, 1], 5)
    assert invert(Germ.const(2, 3)).terms() == {0: F(1, 2)}
    assert order(invert(z(1, 5))) == -1
    with pytest.raises(GermError, match="non-invertible"):
        invert(Germ.zero(4))


def test_sigma_and_parity():
    assert sigma_pullback(Germ.poly([0, 1, 1], 5)).terms() == {1: -1, 2: 1}
    assert sigma_pullback(Germ.poly([1, 0, 0, 1], 5)).terms() == {0: 1, 3: -1}
    ev, od = parity_split(Germ.poly([1, 1, 1], 5))
    assert ev.terms() == {0: 1, 2: 1} and od.terms() == {1: 1}
    ev, od = parity_split(z(3))
    assert ev.is_zero() and od.terms() == {3: 1}


def test_order():
    assert order(Germ.poly([0, 0, 1, 1], 5)) == 2
    assert order(Germ.zero(5)) == INF
    assert order(z(-1, 5, F(3, 2))) == -1


def test_coefficient_beyond_window():
    with pytest.raises(IndeterminateError):
        Germ.poly([1], 3).coefficient(3)


def test_text_roundtrip_example():
    g = parse_germ("v=0;t=5;1,0,3")
    assert g.terms() == {0: 1, 2: 3} and g.trunc == 5
    assert format_germ(g) == "v=0;t=5;1,0,3"
    assert parse_germ("0", default_trunc=5).is_zero()
    assert parse_germ("3/2", default_trunc=4).terms() == {0: F(3, 2)}


@pytest.mark.parametrize("bad", ["v=a;t=3;1", "x=0;t=3;1", "v=4;t=3;1", "1/0"])
def test_parse_errors(bad):
    with pytest.raises(GermError):
        parse_germ(bad, default_trunc=3)


@given(germs(), germs(), germs())
def test_ring_axioms(x, y, w):
    assert x + y == y + x
    assert x * y == y * x
    lhs, rhs = x * (y + w), x * y + x * w
    assert lhs.agrees(rhs, min(lhs.trunc, rhs.trunc))


@given(units())
def test_invert_multiplies_to_one(u):
    assert (u * invert(u)).agrees(Germ.one(u.trunc))


@given(germs(min_val=-2))
def test_sigma_involution_and_split(x):
    assert sigma_pullback(sigma_pullback(x)) == x
    ev, od = parity_split(x)
    assert ev + od == x
    assert sigma_pullback(ev) == ev and sigma_pullback(od) == -od


@given(germs(min_val=-2))
def test_format_parse_roundtrip(x):
    assert parse_germ(format_germ(x)) == x


@given(germs(), st.integers(0, 4))
def test_shift_is_monomial_product(x, k):
    assert x.shift(k).agrees(x * Germ.monomial(k, x.trunc + k), x.trunc)
