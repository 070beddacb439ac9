"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from doccalc.ncalg import Algebra
from doccalc.scalar import Scalar

# free X, Y; scalar S, T; constant c
ALG = Algebra.build(scalars=["S", "T"], constants=["c"])
FAMILIES = ["X", "Y", "S", "T", "c"]

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def scalars(draw, allow_q: bool = True) -> Scalar:
    terms = {}
    for _ in range(draw(st.integers(1, 2))):
        k = draw(st.integers(-1, 2)) if allow_q else 0
        terms[k] = (draw(small_fracs), draw(st.sampled_from([Fraction(0), Fraction(0), Fraction(1), Fraction(-1, 2)])))
    s = Scalar(terms)
    return s if not s.is_zero() else Scalar.coerce(1)


@st.composite
def words(draw, alg: Algebra = ALG, max_len: int = 6, max_shift: int = 3):
    out = alg.const(1)
    for _ in range(draw(st.integers(1, max_len))):
        if draw(st.integers(0, 6)) == 0:
            out = out * alg.J
        else:
            out = out * alg.var(draw(st.sampled_from(FAMILIES)), 0, draw(st.integers(0, max_shift)))
    return out


@st.composite
def exprs(draw, alg: Algebra = ALG, max_terms: int = 3):
    out = alg.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        out = out + draw(scalars()) * draw(words(alg))
    return out
