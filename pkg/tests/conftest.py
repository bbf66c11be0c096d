from fractions import Fraction as F

from hypothesis import settings, strategies as st

from hfl.germ import Germ

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.builds(F, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def germs(draw, trunc=6, min_val=0, max_val=3, parity=None):
    v = draw(st.integers(min_val, max_val))
    cs = draw(st.lists(rationals, min_size=0, max_size=max(0, trunc - v)))
    terms = {v + i: c for i, c in enumerate(cs) if parity is None or (v + i) % 2 == parity}
    return Germ.from_dict(terms, trunc)


@st.composite
def units(draw, trunc=6, even=False):
    g = draw(germs(trunc=trunc, parity=0 if even else None))
    c0 = draw(rationals.filter(bool))
    return Germ.from_dict({**g.terms(), 0: c0}, trunc)
