"""Hypothesis strategies for field elements, polynomials and series."""

from hypothesis import strategies as st

from drinfeld.field import field_for_q
from drinfeld.laurent import LaurentSeries
from drinfeld.poly import APoly, RationalFn

FIELDS = {q: field_for_q(q) for q in (2, 3, 4, 5, 7, 8, 9)}

qs = st.sampled_from(sorted(FIELDS))


def elems(F):
    return st.integers(0, F.q - 1)


def nonzero(F):
    return st.integers(1, F.q - 1)


def polys(F, max_deg=6, var="θ"):
    return st.lists(elems(F), max_size=max_deg + 1).map(lambda c: APoly(F, c, var))


def nonzero_polys(F, max_deg=6, var="θ"):
    return polys(F, max_deg, var).filter(lambda a: not a.is_zero())


def monic_polys(F, lo=1, hi=6, var="θ"):
    return st.integers(lo, hi).flatmap(
        lambda d: st.lists(elems(F), min_size=d, max_size=d).map(lambda c: APoly(F, c + [1], var)))


def rationals(F, max_deg=6):
    return st.tuples(polys(F, max_deg), nonzero_polys(F, max_deg)).map(lambda nd: RationalFn(*nd))


def series(F, prec=20):
    return st.tuples(st.integers(-4, 6), st.lists(elems(F), max_size=12)).map(
        lambda vc: LaurentSeries(F, vc[0], vc[1], prec))
