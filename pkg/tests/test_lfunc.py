import pytest
from hypothesis import given, settings, strategies as st

from drinfeld.laurent import LaurentSeries
from drinfeld.lfunc import (DivergenceRefused, LocalFactor, count_lie, count_module,
                            default_aux_primes, dual_factor_at_one, eigenvalue_transform_check,
                            frobenius_charpoly, goss_factor, goss_L, local_factor, t_action_matrix,
                            taelman_L, zeta_direct, zeta_tail_bound)
from drinfeld.poly import APoly, RationalFn, monic_irreducibles, primes_up_to
from drinfeld.smith import module_order
from drinfeld.tmodule import (make_carlitz, make_carlitz_tensor, make_drinfeld, make_g_n,
                              make_g_prime, make_g_tilde, make_wedge)
from drinfeld.torsion import torsion_kernel

import oracle
from strategies import FIELDS

# ζ_A(n) coefficients of θ^0 .. θ^-(M-1), from the independent oracle
ZETA = {
    (2, 1): [1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1],
    (2, 2): [1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    (3, 1): [1, 0, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 1, 2, 1],
    (3, 2): [1, 0, 0, 0, 0, 0, 1, 0, 2, 0, 0, 0],
}


def coeffs(x, M):
    """Coefficients of θ^0 .. θ^-(M-1) (x has valuation ≥ 0)."""
    out = [0] * M
    for i, c in enumerate(x.c):
        if 0 <= x.v + i < M:
            out[x.v + i] = int(c)
    return out


def t_poly(F, *c):
    return APoly(F, c, "t")


@pytest.mark.parametrize("key", sorted(ZETA))
def test_zeta_frozen(key):
    q, n = key
    expect = ZETA[key]
    M = len(expect)
    z = zeta_direct(FIELDS[q], n, M=M)
    assert z.prec == M
    assert coeffs(z, M) == expect


@pytest.mark.parametrize("key", sorted(ZETA))
def test_frozen_values_match_oracle(key):
    q, n = key
    M = len(ZETA[key])
    assert oracle.zeta(q, n, 2 * M, M) == ZETA[key]


@pytest.mark.parametrize("q,n,d", [(2, 1, 3), (2, 2, 3), (3, 1, 2), (3, 2, 2), (5, 1, 2)])
def test_tail_bound_is_honest(q, n, d):
    # the degree-d stratum alone has valuation at least the bound
    M = zeta_tail_bound(q, n, d)
    only_d = [(a - b) % q for a, b in zip(oracle.zeta(q, n, d, M + 3), oracle.zeta(q, n, d - 1, M + 3))]
    assert all(c == 0 for c in only_d[:M])


def test_zeta_starts_with_one(F3):
    z = zeta_direct(F3, 4, M=10)
    assert z.valuation == 0 and coeffs(z, 1) == [1]


def test_t_action_examples(F2):
    C = make_carlitz(F2)
    th = APoly.x(F2)
    assert t_action_matrix(C, th) == [[1]]
    # θ ↦ θ·x + x^2 on F_4 with basis 1, θ where θ^2 = θ + 1
    T = t_action_matrix(C, th * th + th + 1)
    assert len(T) == 2
    assert count_module(C, th) == t_poly(F2, 1, 1)
    assert count_lie(C, th) == t_poly(F2, 0, 1)


@pytest.mark.parametrize("q", [2, 3])
def test_carlitz_counts_vs_brute_force(q):
    F = FIELDS[q]
    C = make_carlitz(F)
    for beta in primes_up_to(F, 3):
        expect = oracle.carlitz_annihilator(q, list(beta.c))
        got = count_module(C, beta)
        assert list(got.c) == expect
        assert got == beta.substitute("t") - t_poly(F, 1)


@pytest.mark.parametrize("q", [2, 3])
def test_count_lie_is_beta_power(q):
    F = FIELDS[q]
    phi = make_drinfeld(F, [1, 1])
    for G in (make_carlitz_tensor(F, 2), make_g_n(phi, 1), make_wedge(make_drinfeld(F, [1, 0, 1]))):
        for beta in primes_up_to(F, 2):
            assert count_lie(G, beta) == beta.substitute("t") ** G.d
            assert count_module(G, beta).degree == G.d * beta.degree


def test_counts_match_smith_oracle(F2):
    phi = make_drinfeld(F2, [1, 1])
    for G in (make_carlitz(F2), make_carlitz_tensor(F2, 2), phi, make_g_n(phi, 1)):
        for beta in primes_up_to(F2, 3):
            if G.d * beta.degree <= 8:
                assert module_order(t_action_matrix(G, beta), F2) == count_module(G, beta)


@pytest.mark.parametrize("q", [2, 3])
def test_carlitz_charpoly(q):
    F = FIELDS[q]
    C = make_carlitz(F)
    for beta in primes_up_to(F, 2):
        fp = frobenius_charpoly(C, beta)
        assert fp.coeffs == [-beta.substitute("t"), t_poly(F, 1)]
        lf = local_factor(C, beta, with_q=True)
        bt = beta.substitute("t")
        assert dual_factor_at_one(lf) == RationalFn(bt - t_poly(F, 1), bt)


def test_rank2_example(F3):
    th = APoly.x(F3)
    phi = make_drinfeld(F3, [1, -1])
    fp = frobenius_charpoly(phi, th)
    assert fp.coeffs == [t_poly(F3, 0, 1), t_poly(F3, 2), t_poly(F3, 1)]
    assert fp.c == 1
    assert fp.coeffs[1].degree < 1
    assert frobenius_charpoly(phi, th, method="torsion") == fp
    assert frobenius_charpoly(phi, th, method="motive") == fp


def test_torsion_kernel_carlitz(F2):
    th = APoly.x(F2)
    data = torsion_kernel(make_carlitz(F2), th + 1, APoly.x(F2, "t"), 1)
    assert data.s == 1 and len(data.basis) == 1
    assert [[x % APoly.x(F2, "t") for x in row] for row in data.frobenius] == [[t_poly(F2, 1)]]


def _instances(F):
    th = APoly.x(F)
    phi = make_drinfeld(F, [th, -1])
    return [make_carlitz(F), phi, make_g_prime(phi, 1), make_g_tilde(phi, 1), make_g_n(phi, 1),
            make_carlitz_tensor(F, 2)]


@pytest.mark.parametrize("q", [2, 3])
def test_charpoly_identities_and_degree_bounds(q):
    F = FIELDS[q]
    for G in _instances(F):
        for beta in primes_up_to(F, 1 if q == 3 else 2):
            fp = frobenius_charpoly(G, beta)
            bt = beta.substitute("t")
            assert fp.rank == G.rank
            assert fp.coeffs[0] == bt ** G.weight * fp.c
            assert all(b.degree < G.weight * beta.degree for b in fp.coeffs[1:-1])
            assert fp.at(1) * F.inv(fp.c) == count_module(G, beta)
            lf = local_factor(G, beta, with_q=True)
            assert lf.check() == []
            assert dual_factor_at_one(lf) == RationalFn(count_module(G, beta), count_lie(G, beta))


def test_aux_prime_independence(F3):
    phi = make_drinfeld(F3, [1, -1])
    G = make_g_prime(phi, 1)
    for beta in primes_up_to(F3, 1):
        one = [v for v in monic_irreducibles(F3, 1, "t") if v.substitute("θ") != beta]
        two = [v for v in default_aux_primes(F3, beta) if v.degree == 2]
        assert frobenius_charpoly(G, beta, method="motive", aux_primes=one) == \
            frobenius_charpoly(G, beta, method="motive", aux_primes=two)


def test_local_factor_detects_corruption(F2):
    th = APoly.x(F2)
    lf = local_factor(make_carlitz(F2), th, with_q=True)
    bad = LocalFactor(lf.beta, lf.count_G * t_poly(F2, 0, 1), lf.count_Lie, lf.qpoly, lf.c)
    assert bad.check()
    assert LocalFactor.from_json(F2, lf.to_json()).to_json() == lf.to_json()


def test_taelman_degree_one_hand_value(F2):
    # θ/(θ+1) · (θ+1)/θ = 1
    L = taelman_L(make_carlitz(F2), 1, 10)
    assert L.value.truncate(10) == LaurentSeries.one(F2).truncate(10)


@pytest.mark.parametrize("q", [2, 3])
def test_taelman_matches_zeta_when_D_at_least_M(q):
    F = FIELDS[q]
    M = 8
    L = taelman_L(make_carlitz(F), M, M)
    z = zeta_direct(F, 1, M=M)
    assert L.stabilized
    a = L.value.agreement(z)
    assert a is None or a >= M


@pytest.mark.parametrize("q", [2, 3])
def test_factors_are_one_units(q):
    F = FIELDS[q]
    phi = make_drinfeld(F, [1, 1])
    for G in (make_carlitz(F), make_g_n(phi, 1)):
        L = taelman_L(G, 3, 10, keep_factors=True)
        assert L.value.valuation == 0 and coeffs(L.value, 1) == [1]
        for num, den in L.per_prime.values():
            # monic of equal degree, so the value at θ is a 1-unit
            assert num.degree == den.degree and num.is_monic() and den.is_monic()


def test_goss_carlitz_matches_zeta(F2):
    for n in (2, 3):
        g = goss_L(make_carlitz(F2), n, 6, 12).value
        z = zeta_direct(F2, n - 1, M=12)
        a = g.agreement(z)
        need = min(12, (n - 1) * 7)
        assert a is None or a >= need


def test_goss_dual_mode_equals_taelman(F3):
    phi = make_drinfeld(F3, [1, 1])
    a = goss_L(phi, 0, 3, 10, mode="dual").value
    b = taelman_L(phi, 3, 10).value
    assert a.agreement(b) is None or a.agreement(b) >= 10


def test_goss_refuses_divergent_factor(F3):
    # weight 3, rank 2: eigenvalues of size |β|^{3/2} overwhelm β^{-1}
    with pytest.raises(DivergenceRefused):
        goss_L(make_g_prime(make_drinfeld(F3, [1, -1]), 1), 1, 2, 10)


@pytest.mark.parametrize("q", [2, 3])
def test_goss_equals_taelman_per_prime(q):
    F = FIELDS[q]
    phi = make_drinfeld(F, [1, -1])
    for n in (0, 1):
        Gp = make_g_prime(phi, n)
        for beta in primes_up_to(F, 2):
            num, den = goss_factor(frobenius_charpoly(phi, beta), n + 1)
            assert RationalFn(num, den) == RationalFn(count_lie(Gp, beta), count_module(Gp, beta))


@pytest.mark.parametrize("r,n", [(2, 0), (2, 1), (3, 1)])
def test_eigenvalue_transforms(F3, r, n):
    phi = make_drinfeld(F3, [1] * (r - 1) + [-1])
    for beta in primes_up_to(F3, 1):
        rep = eigenvalue_transform_check(phi, n, beta)
        assert rep, repr(rep)


@settings(max_examples=10)
@given(st.data())
def test_ratio_identity_random_drinfeld(data):
    q = data.draw(st.sampled_from([2, 3]))
    F = FIELDS[q]
    a1 = data.draw(st.lists(st.integers(0, q - 1), max_size=3))
    phi = make_drinfeld(F, [APoly(F, tuple(a1)), 1])
    beta = data.draw(st.sampled_from(primes_up_to(F, 2)))
    fp = frobenius_charpoly(phi, beta)
    assert fp.at(1) * F.inv(fp.c) == count_module(phi, beta)
    assert fp.coeffs[1].degree < beta.degree


def test_truncated_euler_product_is_smooth_sum():
    # Below θ^-15 a monic a of degree ≤ 14 is non-8-smooth iff a = βb with
    # β prime of degree 9..14; subtracting those terms from ζ(1) must give
    # the degree-8 Euler product exactly.
    q, M = 2, 15
    F = FIELDS[q]
    diff = [0] * M
    for e in range(9, M):
        for beta in monic_irreducibles(F, e):
            for db in range(M - e):
                for b in oracle.monics(q, db):
                    a = oracle.pmul(list(beta.c), b, q)
                    d = len(a) - 1
                    for k, x in enumerate(oracle.recip_series(a, q, M - d)):
                        diff[d + k] = (diff[d + k] + x) % q
    smooth = [(x - y) % q for x, y in zip(oracle.zeta(q, 1, M, M), diff)]
    assert coeffs(goss_L(make_carlitz(F), 2, 8, M).value, M) == smooth
    # so the truncated product and ζ(1) first differ at θ^-10
    assert next(k for k in range(M) if diff[k]) == 10
