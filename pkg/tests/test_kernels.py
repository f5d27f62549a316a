"""The compiled kernels and the pure-Python fallback must agree exactly."""

import pytest
from hypothesis import given, strategies as st

from drinfeld._kernels import _pykernels as PY

from strategies import FIELDS

C = pytest.importorskip("drinfeld._kernels._ckernels")


def ctxs(F):
    c = F.ctx
    args = (c.q, c.add, c.sub, c.mul, c.neg, c.inv)
    return C.FieldCtx(*args), PY.FieldCtx(*args)


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


@st.composite
def field_and_polys(draw, count=2, max_len=9, nonzero=False):
    F = FIELDS[draw(st.sampled_from([2, 3, 4, 5, 8, 9]))]
    out = []
    for _ in range(count):
        a = trim(draw(st.lists(st.integers(0, F.q - 1), max_size=max_len)))
        if nonzero and not a:
            a = [1]
        out.append(a)
    return F, out


@given(field_and_polys())
def test_ring_ops(data):
    F, (a, b) = data
    c, p = ctxs(F)
    for name in ("poly_add", "poly_sub", "poly_mul", "poly_gcd", "poly_xgcd"):
        assert getattr(C, name)(c, a, b) == getattr(PY, name)(p, a, b), name
    assert C.poly_monic(c, a) == PY.poly_monic(p, a)
    assert C.poly_scale(c, a, F.q - 1) == PY.poly_scale(p, a, F.q - 1)


@given(field_and_polys(count=3, nonzero=True), st.integers(0, 50))
def test_division_and_powers(data, e):
    F, (a, b, m) = data
    c, p = ctxs(F)
    assert C.poly_divmod(c, a, b) == PY.poly_divmod(p, a, b)
    assert C.poly_rem(c, a, b) == PY.poly_rem(p, a, b)
    assert C.poly_mulmod(c, a, b, m) == PY.poly_mulmod(p, a, b, m)
    assert C.poly_powmod(c, a, e, m) == PY.poly_powmod(p, a, e, m)


@given(field_and_polys(), st.integers(1, 12))
def test_series(data, n):
    F, (a, b) = data
    c, p = ctxs(F)
    assert C.series_mul(c, a, b, n) == PY.series_mul(p, a, b, n)
    if a and a[0]:
        assert C.series_inv(c, a, n) == PY.series_inv(p, a, n)


@given(field_and_polys(count=1, max_len=7, nonzero=True))
def test_irreducibility(data):
    F, (f,) = data
    c, p = ctxs(F)
    assert C.is_irreducible(c, f) == PY.is_irreducible(p, f)


@pytest.mark.parametrize("q,d", [(2, 5), (3, 3), (4, 2)])
def test_irreducible_lists(q, d):
    c, p = ctxs(FIELDS[q])
    assert C.irreducible_monics(c, d) == PY.irreducible_monics(p, d)


@given(st.data())
def test_linear_algebra(data):
    F = FIELDS[data.draw(st.sampled_from([2, 3, 4, 5]))]
    n = data.draw(st.integers(1, 5))
    m = data.draw(st.integers(1, 5))
    cell = st.integers(0, F.q - 1)
    A = data.draw(st.lists(st.lists(cell, min_size=m, max_size=m), min_size=n, max_size=n))
    S = data.draw(st.lists(st.lists(cell, min_size=n, max_size=n), min_size=n, max_size=n))
    c, p = ctxs(F)
    assert C.rref(c, A, m) == PY.rref(p, A, m)
    assert C.nullspace(c, A, m) == PY.nullspace(p, A, m)
    assert C.mat_mul(c, S, A) == PY.mat_mul(p, S, A)
    assert C.charpoly(c, S) == PY.charpoly(p, S)


def test_backend_flag():
    from drinfeld._kernels import BACKEND
    assert BACKEND in ("cython", "python")
