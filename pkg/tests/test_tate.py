import time

import pytest
from hypothesis import given, strategies as st

from drinfeld.laurent import KummerElem, LaurentSeries
from drinfeld.tate import (TateSeries, carlitz_period, eval_at_theta, hyperderivative, omega,
                           omega_residual, pi_tilde_from_omega)

from strategies import FIELDS, qs, series


def tate(F, data, T=5, prec=15):
    # coefficients with growing valuation so that evaluation at θ converges
    cs = []
    for i in range(T + 1):
        c = data.draw(series(F, prec + 2 * i))
        cs.append(c.shift(-2 * i - 1))
    return TateSeries(cs, T, tail_bound=lambda i: 2 * i + 1 - 4)


@given(st.data())
def test_twist_homomorphism(data):
    F = FIELDS[data.draw(qs)]
    f, g = tate(F, data), tate(F, data)
    for lhs, rhs in (((f + g).twist(1), f.twist(1) + g.twist(1)),
                     ((f * g).twist(1), f.twist(1) * g.twist(1))):
        for i in range(len(lhs)):
            assert lhs[i] == rhs[i]


@given(st.data())
def test_hyperderivative_leibniz(data):
    F = FIELDS[data.draw(qs)]
    f, g = tate(F, data, 4), tate(F, data, 4)
    fg = f * g
    for j in range(3):
        lhs = hyperderivative(fg, j)
        rhs = None
        for a in range(j + 1):
            term = hyperderivative(f, a) * hyperderivative(g, j - a)
            rhs = term if rhs is None else rhs + term
        for i in range(len(lhs)):
            assert lhs[i].agrees_to(rhs[i], lhs[i].prec)


def test_hyperderivative_of_power(F3):
    # ∂^j t^n = C(n, j) t^{n-j}
    one = LaurentSeries.one(F3)
    zero = LaurentSeries.zero(F3)
    f = TateSeries.poly_t([zero, zero, zero, zero, one])  # t^4
    d2 = hyperderivative(f, 2)
    assert [c.lead() for c in d2.coeffs] == [0, 0, 6 % 3]
    d1 = hyperderivative(f, 1)
    assert [c.lead() for c in d1.coeffs] == [0, 0, 0, 4 % 3]


def test_eval_at_theta_homomorphism(F2):
    one = LaurentSeries.one(F2)
    f = TateSeries([one.shift(-2 * i) for i in range(8)], 7, tail_bound=lambda i: 2 * i)
    g = TateSeries([one.shift(-3 * i) for i in range(8)], 7, tail_bound=lambda i: 3 * i)
    ef, eg = eval_at_theta(f), eval_at_theta(g)
    efg = eval_at_theta((f * g).truncate_t(7))
    prec = min(ef.prec, eg.prec, efg.prec)
    assert efg.agrees_to(ef * eg, prec)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_omega_functional_equation(q):
    t0 = time.time()
    res, prec = omega_residual(FIELDS[q], 12, 40)
    assert res.is_zero() and prec >= 40
    assert time.time() - t0 < 5


@pytest.mark.parametrize("q", [2, 3])
def test_pi_tilde_two_ways(q):
    a = carlitz_period(FIELDS[q], 30)
    b = pi_tilde_from_omega(FIELDS[q], 30)
    assert a.agrees_to(b, 30)


def test_pi_tilde_valuation(F3):
    # |π̃| = q^{q/(q-1)}
    from fractions import Fraction
    assert carlitz_period(F3, 20).valuation() == Fraction(-3, 2)


def test_omega_leading_coefficient(F2):
    # Ω(t) starts with η^{-q} = (-θ)^{-q/(q-1)}
    om = omega(F2, 2, 10).series
    assert om[0].agrees_to(KummerElem.eta_power(F2, -2), 10)
