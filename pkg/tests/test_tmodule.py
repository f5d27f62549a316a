import pytest
from hypothesis import given, settings, strategies as st

from drinfeld import matrix as mx
from drinfeld.poly import APoly, RationalFn, as_rational
from drinfeld.tmodule import (ModuleError, SkewPoly, conjugate_by_root, integral_model,
                              make_carlitz, make_carlitz_tensor, make_drinfeld, make_g_n,
                              make_g_prime, make_g_tilde, make_wedge, make_wedge_tensor,
                              module_from_spec, phi_of_a)

from strategies import FIELDS, polys


def K(F, x):
    return as_rational(F, x)


def ints(A):
    """Matrix of constant entries as ints (for compact comparisons)."""
    return [[x.num[0] if not x.is_zero() else 0 for x in row] for row in A]


def test_carlitz(F2):
    C = make_carlitz(F2)
    assert C.d == 1 and C.rank == 1 and C.degree == 1
    assert C.coeffs[0][0][0] == K(F2, APoly.x(F2)) and C.coeffs[1][0][0] == K(F2, 1)


def test_rank_condition(F3):
    with pytest.raises(ModuleError):
        make_drinfeld(F3, [1, 0])


def test_carlitz_tensor_square(F3):
    th = APoly.x(F3)
    G = make_carlitz_tensor(F3, 2)
    assert G.coeffs[0] == [[K(F3, th), K(F3, 1)], [K(F3, 0), K(F3, th)]]
    assert ints(G.coeffs[1]) == [[0, 0], [1, 0]]
    Gb = make_carlitz_tensor(F3, 2, th)
    assert Gb.coeffs[1][1][0] == K(F3, th)
    assert make_carlitz_tensor(F3, 1).coeffs == make_carlitz(F3).coeffs


def test_g_n_matrices(F3):
    phi = make_drinfeld(F3, [1, 2])
    G = make_g_n(phi, 1)
    assert ints(G.N) == [[0, 0, 1], [0, 0, 0], [0, 0, 0]]
    assert ints(G.coeffs[1]) == [[0, 0, 0], [1, 0, 0], [1, 2, 0]]


def test_wedge_rank3(F3):
    th = APoly.x(F3)
    a1, a2, a3 = K(F3, th), K(F3, th + 1), K(F3, 2)
    W = make_wedge(make_drinfeld(F3, [a1, a2, a3]))
    assert W.coeffs[1] == [[-a2, a3], [-a1, K(F3, 0)]]
    assert W.coeffs[2] == [[K(F3, 0), K(F3, 0)], [a3, K(F3, 0)]]


def test_wedge_rank2_is_phi(F3):
    th = APoly.x(F3)
    phi = make_drinfeld(F3, [th, 2])
    assert make_wedge(phi).coeffs == phi.coeffs


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_wedge_dimension(F2, r):
    assert make_wedge(make_drinfeld(F2, [1] * r)).d == r - 1


def test_wedge_tensor_matrices(F3):
    th = APoly.x(F3)
    a1, a2 = K(F3, th), K(F3, 2)
    G = make_wedge_tensor(make_drinfeld(F3, [a1, a2]), 1)
    z, one = K(F3, 0), K(F3, 1)
    assert G.d == 3
    assert G.coeffs[1] == mx.neg([[z, z, z], [one, z, z], [-a1, a2, z]])
    assert make_wedge_tensor(make_drinfeld(F3, [1, 1, 1]), 1).d == 5


@pytest.mark.parametrize("q", [2, 3])
def test_g_prime_n0(q):
    F = FIELDS[q]
    th = APoly.x(F)
    phi = make_drinfeld(F, [th, -1])
    assert make_g_prime(phi, 0).coeffs == phi.coeffs
    assert make_g_prime(phi, 1).d == 3


def test_g_tilde(F3):
    th = APoly.x(F3)
    phi = make_drinfeld(F3, [th, -1])
    assert make_g_tilde(phi, 0).coeffs == phi.coeffs
    psi = make_drinfeld(F3, [th, 1])
    G = make_g_tilde(psi, 1)
    E = make_g_n(psi, 1).coeffs[1]
    assert G.coeffs[1] == mx.neg(E)
    with pytest.raises(ModuleError):
        make_g_tilde(make_drinfeld(F3, [1, th]), 1)


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_g_prime_is_conjugated_wedge_tensor(q, r, n):
    F = FIELDS[q]
    th = APoly.x(F)
    a = [th + i for i in range(r - 1)] + [th * th + 1]
    phi = make_drinfeld(F, a)
    u = K(F, (-1) ** (r - 1)) * K(F, a[-1]).inverse()
    assert make_g_prime(phi, n).coeffs == conjugate_by_root(make_wedge_tensor(phi, n), u).coeffs


@pytest.mark.parametrize("r,n", [(2, 1), (2, 3), (3, 1), (3, 2), (4, 2)])
def test_nilpotency_and_zero_rows(F2, r, n):
    phi = make_drinfeld(F2, [1] * r)
    for G in (make_g_n(phi, n), make_wedge_tensor(phi, n), make_g_prime(phi, n), make_g_tilde(phi, n)):
        assert G.nilpotency_index() == n + 1
        assert all(x.is_zero() for row in G.N[-r:] for x in row)
    assert make_carlitz_tensor(F2, n + 1).nilpotency_index() == n + 1
    assert make_wedge(phi).nilpotency_index() == 1


def test_integral_model(F3):
    th = APoly.x(F3)
    phi = make_drinfeld(F3, [RationalFn(APoly(F3, (1,)), th)])
    G, a = integral_model(phi)
    assert a == th
    assert G.coeffs[1][0][0] == K(F3, th ** (3 - 2))
    assert G.coeffs[0] == phi.coeffs[0]
    same, one = integral_model(make_carlitz(F3))
    assert one.is_one() and same.coeffs == make_carlitz(F3).coeffs


def test_phi_of_t_squared(F3):
    th = APoly.x(F3)
    C = make_carlitz(F3)
    s = phi_of_a(C, APoly.x(F3, "t") ** 2)
    assert [c[0][0] for c in s.coeffs] == [K(F3, th * th), K(F3, th ** 3 + th), K(F3, 1)]
    assert phi_of_a(C, 1).coeffs == [mx.identity(F3, 1)]


@settings(max_examples=15)
@given(st.data())
def test_phi_of_a_is_ring_homomorphism(data):
    F = FIELDS[data.draw(st.sampled_from([2, 3]))]
    phi = make_drinfeld(F, [1, APoly.x(F)])
    G = data.draw(st.sampled_from([phi, make_g_n(phi, 1), make_carlitz_tensor(F, 2)]))
    a = data.draw(polys(F, 3, "t"))
    b = data.draw(polys(F, 3, "t"))
    assert phi_of_a(G, a * b) == phi_of_a(G, a) * phi_of_a(G, b)
    assert phi_of_a(G, a + b) == phi_of_a(G, a) + phi_of_a(G, b)
    if G is phi and not a.is_zero():
        assert phi_of_a(G, a).degree == 2 * a.degree


def test_skew_multiplication_twists(F3):
    th = K(F3, APoly.x(F3))
    tau = SkewPoly([[[K(F3, 0)]], [[K(F3, 1)]]])
    theta = SkewPoly([[[th]]])
    # τ·θ = θ^q τ
    assert (tau * theta).coeffs[1][0][0] == th ** 3


def test_module_spec(F3):
    G = module_from_spec({"field": {"p": 3}, "type": "g_prime", "coeffs": [[0, 1], 2], "n": 1})
    assert G.label == "g_prime" and G.d == 3 and G.weight == 3
    C = module_from_spec({"type": "carlitz_tensor", "n": 2, "b": [0, 1]}, F3)
    assert C.coeffs[1][1][0] == K(F3, APoly.x(F3))
    assert module_from_spec({"type": "carlitz"}, F3).coeffs == make_carlitz(F3).coeffs
    frac = module_from_spec({"coeffs": [{"num": [1], "den": [0, 1]}]}, F3)
    assert not frac.is_integral()
    with pytest.raises(ModuleError):
        module_from_spec({"type": "nonsense", "coeffs": [1, 1]}, F3)
    with pytest.raises(ModuleError):
        module_from_spec({"type": "drinfeld", "rank": 3, "coeffs": [1, 1]}, F3)


def test_content_hash_is_stable(F3):
    a = make_g_n(make_drinfeld(F3, [1, 2]), 1)
    b = make_g_n(make_drinfeld(F3, [1, 2]), 1)
    c = make_g_n(make_drinfeld(F3, [1, 1]), 1)
    assert a.content_hash() == b.content_hash() != c.content_hash()
