from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hfl.wps import (
    WPSError,
    WPSPoint,
    equals,
    format_point,
    is_orbifold_singular,
    normalized,
    parse_point,
    rescale,
    torus_act,
)

P112 = (1, 1, 2)


def pt(*c, w=P112):
    return WPSPoint.make(w, c)


def test_equality_examples():
    assert pt(1, 2, 3) == pt(2, 4, 12)
    assert pt(1, 2, 3) != pt(1, 2, 4)
    assert pt(0, 0, 1) == pt(0, 0, 5)


def test_orbifold_root_of_unity_separated():
    # lambda = i acts on P(2,2) as -1 on both coordinates, never as (1, -1)
    assert pt(1, 1, w=(2, 2)) != pt(1, -1, w=(2, 2))
    assert pt(1, 1, w=(2, 2)) == pt(-1, -1, w=(2, 2))


def test_weight_mismatch():
    with pytest.raises(WPSError):
        equals(pt(1, 1, 1), pt(1, 1, w=(1, 1)))


def test_origin_rejected():
    with pytest.raises(WPSError):
        pt(0, 0, 0)


def test_torus():
    assert torus_act((1, 1), pt(1, 5, 7)).coords == (1, 5, 7)
    assert torus_act((2, 3), pt(1, 1, 1)).coords == (1, 2, 9)
    with pytest.raises(WPSError):
        torus_act((0, 1), pt(1, 1, 1))


def test_singular_locus():
    assert is_orbifold_singular(pt(0, 0, 1))
    assert not is_orbifold_singular(pt(1, 0, 5))


def test_text():
    x = parse_point("w=1,1,2;x=1,2,3")
    assert format_point(x) == "w=1,1,2;x=1,2,3"
    assert normalized(pt(2, 4, 12)).coords == (1, 2, 3)
    with pytest.raises(WPSError):
        parse_point("1,2,3")


coords = st.lists(st.builds(F, st.integers(-5, 5), st.integers(1, 3)), min_size=3, max_size=3)


@given(coords, st.builds(F, st.integers(1, 5), st.integers(1, 4)), st.sampled_from([1, -1]))
def test_rescale_is_equal(c, lam, sign):
    if not any(c):
        return
    x = pt(*c)
    assert rescale(lam * sign, x) == x


@given(coords, coords)
def test_equality_symmetric(c1, c2):
    if not any(c1) or not any(c2):
        return
    assert (pt(*c1) == pt(*c2)) == (pt(*c2) == pt(*c1))
