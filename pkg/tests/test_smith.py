from drinfeld.poly import APoly
from drinfeld.smith import invariant_factors, module_order, smith_form


def P(F, *c):
    return APoly(F, c, "t")


def test_diagonal_divisibility(F3):
    t = APoly.x(F3, "t")
    M = [[t * (t + 1), P(F3)], [P(F3), t]]
    d = smith_form(M)
    assert d == [t, t * (t + 1)]


def test_unimodular(F2):
    t = APoly.x(F2, "t")
    M = [[P(F2, 1), t], [P(F2), P(F2, 1)]]
    assert smith_form(M) == [P(F2, 1), P(F2, 1)]


def test_singular(F2):
    t = APoly.x(F2, "t")
    assert smith_form([[t, t], [t, t]]) == [t, P(F2)]


def test_jordan_block(F3):
    # t acting as a single Jordan block with eigenvalue 2
    T = [[2, 1, 0], [0, 2, 1], [0, 0, 2]]
    t = APoly.x(F3, "t")
    assert invariant_factors(T, F3) == [(t - P(F3, 2)) ** 3]
    assert module_order(T, F3) == (t - P(F3, 2)) ** 3


def test_scalar_matrix(F3):
    t = APoly.x(F3, "t")
    T = [[1, 0], [0, 1]]
    assert invariant_factors(T, F3) == [t - P(F3, 1), t - P(F3, 1)]
