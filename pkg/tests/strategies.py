"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from c2finite.cfinite import CFiniteSeq
from c2finite.rings import QQ, MPoly

small_int = st.integers(min_value=-5, max_value=5)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def mpolys(vars=("X", "Y"), max_terms=4, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in vars])
    return st.dictionaries(exps, rationals, max_size=max_terms).map(lambda d: MPoly(vars, d))


@st.composite
def cfinite_seqs(draw, max_order=4, max_vf=2, coeff=rationals):
    s = draw(st.integers(1, max_order))
    vf = draw(st.integers(0, max_vf))
    coeffs = draw(st.lists(coeff, min_size=s, max_size=s))
    inits = draw(st.lists(rationals, min_size=vf + s, max_size=vf + s))
    return CFiniteSeq(QQ, coeffs, inits, vf)
