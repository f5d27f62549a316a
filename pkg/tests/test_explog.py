import pytest
from hypothesis import given, settings, strategies as st

from drinfeld.explog import (ConvergenceError, PeriodError, agf, agf_residual, composition_residual,
                             exp_eval, exp_series, functional_equation_residual, log_eval,
                             log_series, quasi_periods, residual_agreement)
from drinfeld.laurent import LaurentSeries
from drinfeld.poly import APoly, RationalFn
from drinfeld.tate import carlitz_period
from drinfeld.tmodule import (make_carlitz, make_carlitz_tensor, make_drinfeld, make_g_n,
                              make_g_prime, make_g_tilde, make_wedge, make_wedge_tensor)

from strategies import FIELDS


def small(F, v, coeffs):
    return LaurentSeries(F, v, coeffs)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_carlitz_closed_forms(q):
    F = FIELDS[q]
    C = make_carlitz(F)
    th = APoly.x(F)
    one = APoly(F, (1,))
    es, ls = exp_series(C, 5), log_series(C, 5)
    D, L = one, one
    for i in range(6):
        if i:
            D = D.frobenius_twist(1) * (APoly.monomial(F, q ** i) - th)
            L = L * (th - APoly.monomial(F, q ** i))
        assert es.coeff(i)[0][0] == RationalFn(one, D)
        assert ls.coeff(i)[0][0] == RationalFn(one, L)


def _modules(F):
    phi = make_drinfeld(F, [1, -1])
    mods = [make_carlitz(F), make_carlitz_tensor(F, 3), phi,
            make_wedge(make_drinfeld(F, [1, 0, 1]))]
    for mk in (make_g_n, make_wedge_tensor, make_g_prime, make_g_tilde):
        mods += [mk(phi, 1), mk(phi, 2)]
    return mods


@pytest.mark.parametrize("q", [2, 3])
def test_functional_equation_exact(q):
    for G in _modules(FIELDS[q]):
        res = functional_equation_residual(G, exp_series(G, 6))
        assert all(x.is_zero() for x in res), G.label


@pytest.mark.parametrize("q", [2, 3])
def test_log_inverts_exp_formally(q):
    for G in _modules(FIELDS[q])[:6]:
        assert all(x.is_zero() for x in composition_residual(exp_series(G, 5), log_series(G, 5)))


def test_extension_is_consistent(F3):
    G = make_g_n(make_drinfeld(F3, [1, 1]), 1)
    short, long = exp_series(G, 3), exp_series(G, 6)
    assert all(short.coeff(k) == long.coeff(k) for k in range(4))


def test_exp_zero(F3):
    C = make_carlitz(F3)
    assert exp_eval(C, [LaurentSeries(F3, 0, [])], 20)[0].is_zero()


@pytest.mark.parametrize("q", [2, 3, 5])
def test_round_trip(q):
    F = FIELDS[q]
    C = make_carlitz(F)
    x = small(F, 1, [1])
    y = exp_eval(C, log_eval(C, [x], 34), 30)[0]
    a = y.agreement(x)
    assert a is None or a >= 30


@settings(max_examples=25)
@given(st.data())
def test_exp_is_fq_linear(data):
    F = FIELDS[data.draw(st.sampled_from([2, 3, 4, 5]))]
    digit = st.integers(0, F.q - 1)
    x = small(F, data.draw(st.integers(1, 3)), data.draw(st.lists(digit, min_size=1, max_size=4)))
    y = small(F, data.draw(st.integers(1, 3)), data.draw(st.lists(digit, min_size=1, max_size=4)))
    c = data.draw(digit)
    G = data.draw(st.sampled_from([make_carlitz(F), make_carlitz_tensor(F, 2)]))
    vx = [x] + [y] * (G.d - 1)
    vy = [y] + [x] * (G.d - 1)
    M = 20
    ex, ey = exp_eval(G, vx, M), exp_eval(G, vy, M)
    exy = exp_eval(G, [a + b for a, b in zip(vx, vy)], M)
    for s, a, b in zip(exy, ex, ey):
        assert (s - a - b).truncate(M).is_zero()
    ecx = exp_eval(G, [a * F.elem(c) if hasattr(F, "elem") else a * c for a in vx], M)
    for s, a in zip(ecx, ex):
        assert (s - a * c).truncate(M).is_zero()


def test_log_refuses_outside_radius(F2):
    C = make_carlitz(F2)
    with pytest.raises(ConvergenceError):
        log_eval(C, [small(F2, -2, [1])], 20)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_exp_kills_pi_tilde(q):
    F = FIELDS[q]
    C = make_carlitz(F)
    pi = carlitz_period(F, 24)
    assert exp_eval(C, [pi], 20)[0].is_zero()


def test_exp_pi_over_theta_is_torsion(F3):
    # θ-torsion of the Carlitz module: x^{q-1} = -θ
    C = make_carlitz(F3)
    x = exp_eval(C, [carlitz_period(F3, 24) * LaurentSeries.monomial(F3, -1)], 20)[0]
    lhs = x * LaurentSeries.monomial(F3, 1) + x ** 3
    assert lhs.is_zero()


@pytest.mark.parametrize("q", [2, 3])
def test_agf_identity(q):
    F = FIELDS[q]
    phi = make_drinfeld(F, [1, 1])
    for G in (make_carlitz(F), phi, make_g_n(phi, 1), make_carlitz_tensor(F, 2)):
        w = [small(F, 1 + i, [1, 1]) for i in range(G.d)]
        kind, prec = residual_agreement(agf_residual(agf(G, w, 6, 12)))
        assert kind == "zero" and (prec is None or prec >= 12), G.label


def test_agf_zero_and_truncation(F2):
    C = make_carlitz(F2)
    z = agf(C, [LaurentSeries(F2, 0, [])], 6, 12)
    assert all(c.is_zero() for i in range(6) for c in z.coefficient(i))
    a = agf(C, [small(F2, 1, [1])], 6, 12)
    b = agf(C, [small(F2, 1, [1])], 11, 12)
    assert all(a.coefficient(i) == b.coefficient(i) for i in range(6))


@pytest.mark.parametrize("q", [2, 3])
def test_quasi_periods_carlitz(q):
    F = FIELDS[q]
    pi = carlitz_period(F, 20)
    P = quasi_periods(make_carlitz(F), [pi], 15)
    assert len(P) == 1 and len(P[0]) == 1
    assert (P[0][0] + pi).is_zero()


def test_quasi_periods_refuse_non_period(F2):
    with pytest.raises(PeriodError):
        quasi_periods(make_drinfeld(F2, [1, 1]), [small(F2, -1, [1])], 10)
