"""Frobenius characteristic polynomials through the t-motive of the reduction.

For a module Ḡ over L = A/βA let M̄ = L{τ}^{1×d}, with t acting by right
multiplication by φ̄(t).  The quotient N = M̄ / M̄·φ̄(v^k) is a free
L[t]/(v^k)-module of rank r when Ḡ has good reduction, and left
multiplication by τ^{deg β} is L-linear on it.  Its characteristic polynomial
over L[t]/(v^k) has coefficients in F_q[t]/(v^k) and equals Q_β modulo v^k.
"""

from .poly import APoly
from .residue import (PolyRing, ReductionError, ResidueField, SpanTracker, berkowitz,
                      solve_columns)

# -- skew polynomials over L (lists of L elements, index = power of τ) ----------


def _sk_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def sk_deg(a):
    return len(a) - 1


def sk_add(L, a, b):
    n = max(len(a), len(b))
    out = [L.add(a[i] if i < len(a) else (), b[i] if i < len(b) else ()) for i in range(n)]
    return _sk_trim(out)


def sk_sub(L, a, b):
    n = max(len(a), len(b))
    out = [L.sub(a[i] if i < len(a) else (), b[i] if i < len(b) else ()) for i in range(n)]
    return _sk_trim(out)


def sk_lmul_mono(L, c, s, b):
    """(c·τ^s)·b = Σ c·b_j^{q^s} τ^{j+s}."""
    if not c or not b:
        return []
    out = [()] * s + [L.mul(c, L.frob(x, s)) if x else () for x in b]
    return _sk_trim(out)


def sk_mul(L, a, b):
    out = []
    for s, c in enumerate(a):
        if c:
            out = sk_add(L, out, sk_lmul_mono(L, c, s, b))
    return out


def sk_rdivmod(L, a, b):
    """a = u·b + r with deg r < deg b (division on the right)."""
    if not b:
        raise ZeroDivisionError("division by zero skew polynomial")
    m = sk_deg(b)
    bm = b[m]
    u = []
    a = list(a)
    while len(a) - 1 >= m:
        n = len(a) - 1
        s = n - m
        c = L.div(a[n], L.frob(bm, s))
        a = sk_sub(L, a, sk_lmul_mono(L, c, s, b))
        u = sk_add(L, u, [()] * s + [c])
    return u, a


# -- matrices over L{τ} ----------------------------------------------------------


def reduce_coefficients(G, L):
    """The matrices A_0, ..., A_m of φ(t) reduced modulo β."""
    out = []
    for A in G.coeffs:
        out.append([[L.reduce(x) for x in row] for row in A])
    return out


def phi_t_matrix(Abar):
    """φ̄(t) as a d×d matrix of skew polynomials."""
    d = len(Abar[0])
    return [[_sk_trim([A[i][j] for A in Abar]) for j in range(d)] for i in range(d)]


def skmat_mul(L, X, Y):
    d = len(X)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = []
            for k in range(d):
                if X[i][k] and Y[k][j]:
                    acc = sk_add(L, acc, sk_mul(L, X[i][k], Y[k][j]))
            row.append(acc)
        out.append(row)
    return out


def phi_bar_of(L, Pt, a):
    """φ̄(a) for a ∈ F_q[t] as a matrix of skew polynomials (Horner)."""
    d = len(Pt)

    def scalar(c):
        return [[[L.from_fq(c)] if (i == j and c) else [] for j in range(d)] for i in range(d)]

    res = scalar(a.c[-1])
    for c in reversed(a.c[:-1]):
        res = skmat_mul(L, Pt, res)
        if c:
            for i in range(d):
                res[i][i] = sk_add(L, res[i][i], [L.from_fq(c)])
    return res


def hermite(L, Phi):
    """Upper triangular form of Φ under left row operations over L{τ}."""
    H = [[list(x) for x in row] for row in Phi]
    d = len(H)
    for c in range(d):
        while True:
            nz = [i for i in range(c, d) if H[i][c]]
            if not nz:
                raise ReductionError("φ̄(v^k) is not of full rank")
            p = min(nz, key=lambda i: len(H[i][c]))
            others = [i for i in nz if i != p]
            if not others:
                break
            for i in others:
                u, _ = sk_rdivmod(L, H[i][c], H[p][c])
                H[i] = [sk_sub(L, H[i][j], sk_mul(L, u, H[p][j])) for j in range(d)]
        H[c], H[p] = H[p], H[c]
    return H


class MotiveQuotient:
    """N = L{τ}^{1×d} / (row module of H), with L-basis τ^j e_i, j < deg h_ii."""

    def __init__(self, L, H):
        self.L = L
        self.H = H
        self.d = len(H)
        self.degs = [sk_deg(H[i][i]) for i in range(self.d)]
        self.offsets = []
        off = 0
        for dg in self.degs:
            self.offsets.append(off)
            off += dg
        self.dim = off

    def normal_form(self, m):
        """Coordinates of the class of the row vector m (list of skew polys)."""
        L, H = self.L, self.H
        m = [list(x) for x in m]
        for i in range(self.d):
            h = H[i][i]
            if len(m[i]) - 1 >= len(h) - 1:
                u, r = sk_rdivmod(L, m[i], h)
                m[i] = r
                for j in range(i + 1, self.d):
                    if H[i][j]:
                        m[j] = sk_sub(L, m[j], sk_mul(L, u, H[i][j]))
        out = []
        for i in range(self.d):
            v = m[i] + [()] * (self.degs[i] - len(m[i]))
            out.extend(v)
        return out

    def basis_element(self, idx):
        for i in range(self.d):
            if idx < self.offsets[i] + self.degs[i]:
                return i, idx - self.offsets[i]
        raise IndexError(idx)


def _apply(L, M, x):
    """M (list of columns) applied to the coordinate vector x."""
    h = len(x)
    out = [()] * len(M[0])
    for j in range(h):
        c = x[j]
        if not c:
            continue
        col = M[j]
        for i, y in enumerate(col):
            if y:
                out[i] = L.add(out[i], L.mul(c, y))
    return out


def _krylov_basis(L, T, h, r, n):
    """Choose n_1..n_r with {T^a n_i : a < n} an L-basis of L^h."""
    span = SpanTracker(L, h)
    chosen = []
    for idx in range(h):
        x = [()] * h
        x[idx] = L.one
        kry = [x]
        for _ in range(n - 1):
            kry.append(_apply(L, T, kry[-1]))
        if span.try_add(kry):
            chosen.append(kry)
            if len(chosen) == r:
                return chosen
    raise ReductionError("no module basis of the expected rank")


def local_charpoly_motive(Abar, L, v, k, r):
    """Q_β modulo v^k through the motive quotient; returns r+1 APoly in t."""
    F = L.F
    V = v ** k
    n = V.degree
    Pt = phi_t_matrix(Abar)
    d = len(Pt)
    Phi = phi_bar_of(L, Pt, V)
    H = hermite(L, Phi)
    Nq = MotiveQuotient(L, H)
    h = Nq.dim
    if h != r * n:
        raise ReductionError(f"quotient has L-dimension {h}, expected {r * n}")
    e = L.e
    # columns: images of the basis vectors τ^j e_i
    Fcols, Tcols = [], []
    for idx in range(h):
        i, j = Nq.basis_element(idx)
        m = [[] for _ in range(d)]
        m[i] = [()] * (j + e) + [L.one]
        Fcols.append(Nq.normal_form(m))
        m = [sk_lmul_mono(L, L.one, j, Pt[i][col]) for col in range(d)]
        Tcols.append(Nq.normal_form(m))
    blocks = _krylov_basis(L, Tcols, h, r, n)
    basis = [vec for blk in blocks for vec in blk]
    images = [_apply(L, Fcols, blk[0]) for blk in blocks]
    coords = solve_columns(L, basis, images)
    R = PolyRing(L, V)
    C = [[None] * r for _ in range(r)]
    for i in range(r):
        for jb in range(r):
            C[jb][i] = R.reduce(coords[i][jb * n:(jb + 1) * n])
    cp = berkowitz(R, C)
    return [_to_fq_poly(F, L, c) for c in cp]


def _to_fq_poly(F, L, c):
    out = []
    for x in c:
        if len(x) > 1:
            raise ArithmeticError("characteristic polynomial coefficient outside F_q[t]")
        out.append(x[0] if x else 0)
    return APoly(F, out, "t")


def drinfeld_charpoly(Abar, L):
    """Exact Q_β for a Drinfeld module via the L[t]-basis 1, τ, ..., τ^{r-1}."""
    F = L.F
    a = [row[0][0] for row in Abar]
    r = len(a) - 1
    if not a[r]:
        raise ReductionError("top coefficient vanishes modulo β")
    R = PolyRing(L)
    inv = L.inv(a[r])
    # τ^r = a_r^{-1}(t - θ̄) - Σ_{i<r} a_i/a_r τ^i
    top = [R.mul((L.neg(a[0]), L.one), (inv,))]
    for i in range(1, r):
        top.append(R.neg((L.mul(a[i], inv),)) if a[i] else ())

    def tau(vec):
        tw = [R.map_coeffs(f, L.frob) for f in vec]
        out = [()] + tw[:-1]
        last = tw[-1]
        if last:
            out = [R.add(x, R.mul(last, y)) for x, y in zip(out, top)]
        return out

    cols = []
    for i in range(r):
        vec = [()] * r
        vec[i] = R.one
        for _ in range(L.e):
            vec = tau(vec)
        cols.append(vec)
    C = [[cols[j][i] for j in range(r)] for i in range(r)]
    cp = berkowitz(R, C)
    return [_to_fq_poly(F, L, c) for c in cp]


def residue_field(beta):
    return ResidueField(beta)
