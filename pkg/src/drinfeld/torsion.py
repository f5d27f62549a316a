"""Explicit v^k-torsion of the reduction Ḡ inside (F_{β^s})^d.

F_{β^s} is realized as F_q[z]/(h) with h irreducible of degree s·deg β; the
residue field L embeds through a root ρ of β found in the subfield fixed by
x ↦ x^{q^{deg β}}.
"""

from math import lcm

from ._kernels import K
from .poly import APoly
from .residue import ReductionError


def first_irreducible(F, n):
    """First monic irreducible of degree n over F_q in base-q order."""
    q, ctx = F.q, F.ctx
    if n == 1:
        return [0, 1]
    for code in range(q ** n):
        c = []
        x = code
        for _ in range(n):
            c.append(x % q)
            x //= q
        if c[0] == 0:
            continue
        f = c + [1]
        if K.is_irreducible(ctx, f):
            return f
    raise ValueError("no irreducible found")


class ExtField:
    """F_{q^n} = F_q[z]/(h); elements are coordinate lists of length n."""

    def __init__(self, F, n):
        self.F = F
        self.n = n
        self.ctx = F.ctx
        self.h = first_irreducible(F, n)

    def vec(self, a):
        a = list(a)
        return a + [0] * (self.n - len(a))

    def trim(self, a):
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return a

    def mul(self, a, b):
        return self.vec(K.poly_mulmod(self.ctx, self.trim(a), self.trim(b), self.h))

    def add(self, a, b):
        add = self.F.add
        return [add(x, y) for x, y in zip(a, b)]

    def pow(self, a, e):
        t = self.trim(a)
        if not t:
            return [0] * self.n
        return self.vec(K.poly_powmod(self.ctx, t, e, self.h))

    def basis(self, i):
        v = [0] * self.n
        v[i] = 1
        return v

    def frobenius_matrix(self, j):
        """F_q-matrix (rows) of x ↦ x^{q^j}."""
        cols = [self.pow(self.basis(i), self.F.q ** j) for i in range(self.n)]
        return [[cols[c][r] for c in range(self.n)] for r in range(self.n)]


def _mat_vec(F, M, v):
    add, mul = F.add, F.mul
    out = []
    for row in M:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return out


def _embed_root(F, E, beta, e):
    """A root ρ ∈ E of β, searched in the fixed field of x ↦ x^{q^e}."""
    ctx = F.ctx
    Fr = E.frobenius_matrix(e)
    n = E.n
    rows = [[F.sub(Fr[i][j], 1 if i == j else 0) for j in range(n)] for i in range(n)]
    fix = K.nullspace(ctx, rows, n)
    q = F.q
    for code in range(q ** len(fix)):
        x = [0] * n
        c = code
        for b in fix:
            a = c % q
            c //= q
            if a:
                x = [F.add(u, F.mul(a, w)) for u, w in zip(x, b)]
        # Horner evaluation of β at x
        val = [0] * n
        for coef in reversed(beta.c):
            val = E.mul(val, x)
            val[0] = F.add(val[0], coef)
        if not any(val):
            return x
    raise ArithmeticError("β has no root in the extension")


class TorsionData:
    """Result of :func:`torsion_kernel`."""

    def __init__(self, s, basis, frob, modulus, module_basis):
        self.s = s
        self.basis = basis
        self.frobenius = frob
        self.modulus = modulus
        self.module_basis = module_basis

    def __repr__(self):
        return f"TorsionData(s={self.s}, dim={len(self.basis)}, modulus={self.modulus})"


def torsion_kernel(G, beta, v, k, r=None, s_max=128):
    """Kernel of φ̄(v^k) on (F_{β^s})^d and the Frobenius matrix on it.

    Returns :class:`TorsionData` whose ``frobenius`` is the r×r matrix (APoly in
    t, reduced mod v^k) of τ^{deg β} in an F_q[t]/(v^k)-basis of the kernel.
    """
    F = G.F
    r = r or G.rank
    if r is None:
        raise ValueError("rank must be known")
    e = beta.degree
    if v.substitute("θ") == beta:
        raise ValueError("auxiliary prime must satisfy v(θ) ≠ β")
    V = v ** k
    nV = V.degree
    target = r * nV
    for s in candidate_degrees(F, r, v.degree, k, s_max):
        data = _try_extension(G, beta, e, s, V, r, target)
        if data is not None:
            return data
    raise ReductionError(f"torsion of rank {r} not found up to extension degree {s_max}")


def group_exponent(F, r, deg_v, k):
    """An exponent of GL_r(F_q[t]/(v^k)) with deg v = deg_v.

    Semisimple parts have order dividing some q^{i·deg v} - 1 (i ≤ r) and the
    unipotent part is killed by the least p-power ≥ r·k.
    """
    m = 1
    for i in range(1, r + 1):
        m = lcm(m, F.q ** (i * deg_v) - 1)
    pa = 1
    while pa < r * k:
        pa *= F.p
    return m * pa


def candidate_degrees(F, r, deg_v, k, s_max):
    """Extension degrees s ≤ s_max that can be the order of Frobenius on Ḡ[v^k]."""
    N = group_exponent(F, r, deg_v, k)
    return [s for s in range(1, s_max + 1) if N % s == 0]


def _try_extension(G, beta, e, s, V, r, target):
    F, d = G.F, G.d
    ctx = F.ctx
    E = ExtField(F, e * s)
    n = E.n
    rho = _embed_root(F, E, beta, e)
    # images of coefficients in E
    mats = []
    for A in G.coeffs:
        M = []
        for row in A:
            out = []
            for x in row:
                if (x.den % beta).is_zero():
                    raise ReductionError("coefficient not integral at β")
                red = x.reduce_mod(beta)
                val = [0] * n
                for coef in reversed(red.c):
                    val = E.mul(val, rho)
                    val[0] = F.add(val[0], coef)
                out.append(val)
            M.append(out)
        mats.append(M)
    N = d * n
    frobs = [E.frobenius_matrix(j) for j in range(len(mats))]
    # matrix of x ↦ φ̄(t)x, columns indexed by (coordinate j, basis b)
    cols = []
    for j in range(d):
        for b in range(n):
            img = [[0] * n for _ in range(d)]
            for m, M in enumerate(mats):
                xq = [frobs[m][rr][b] for rr in range(n)]
                for i in range(d):
                    c = M[i][j]
                    if any(c):
                        img[i] = E.add(img[i], E.mul(c, xq))
            cols.append([a for blk in img for a in blk])
    T = [[cols[c][rr] for c in range(N)] for rr in range(N)]
    # V(T)
    VT = [[0] * N for _ in range(N)]
    for coef in reversed(V.c):
        VT = K.mat_mul(ctx, VT, T) if any(any(rw) for rw in VT) else VT
        if coef:
            for i in range(N):
                VT[i][i] = F.add(VT[i][i], coef)
    kern = K.nullspace(ctx, VT, N)
    if len(kern) != target:
        if len(kern) > target:
            raise ReductionError("kernel larger than the expected rank")
        return None
    # restrict T and the deg β-Frobenius to the kernel
    Fe = E.frobenius_matrix(e)

    def frob_vec(x):
        out = []
        for i in range(d):
            out.extend(_mat_vec(F, Fe, x[i * n:(i + 1) * n]))
        return out

    def coords(vectors):
        rows = [[kern[c][rr] for c in range(len(kern))] + [w[rr] for w in vectors]
                for rr in range(N)]
        red, piv = K.rref(ctx, rows, len(kern) + len(vectors))
        m = len(kern)
        if piv[:m] != list(range(m)) or len(piv) > m:
            raise ArithmeticError("image left the kernel")
        return [[red[i][m + c] for i in range(m)] for c in range(len(vectors))]

    Tk = coords([_mat_vec(F, T, x) for x in kern])
    Fk = coords([frob_vec(x) for x in kern])
    h = len(kern)
    Tk_rows = [[Tk[c][rr] for c in range(h)] for rr in range(h)]
    Fk_rows = [[Fk[c][rr] for c in range(h)] for rr in range(h)]
    nV = V.degree
    # Krylov basis over F_q[t]/V
    chosen, rows_span = [], []
    for idx in range(h):
        x = [0] * h
        x[idx] = 1
        kry = [x]
        for _ in range(nV - 1):
            kry.append(_mat_vec(F, Tk_rows, kry[-1]))
        trial = rows_span + kry
        if len(K.rref(ctx, trial, h)[1]) == len(trial):
            rows_span = trial
            chosen.append(kry)
            if len(chosen) == r:
                break
    if len(chosen) < r:
        raise ReductionError("torsion is not free of the expected rank")
    basis = [vec for blk in chosen for vec in blk]
    images = [_mat_vec(F, Fk_rows, blk[0]) for blk in chosen]
    rows = [[basis[c][rr] for c in range(h)] + [w[rr] for w in images] for rr in range(h)]
    red, piv = K.rref(ctx, rows, h + r)
    frob = [[None] * r for _ in range(r)]
    for i in range(r):
        y = [red[rr][h + i] for rr in range(h)]
        for jb in range(r):
            frob[jb][i] = APoly(F, y[jb * nV:(jb + 1) * nV], "t") % V
    module_basis = [blk[0] for blk in chosen]
    # express kernel vectors back in (F_{β^s})^d coordinates
    kernel_vectors = kern
    return TorsionData(s, kernel_vectors, frob, V, module_basis)


def charpoly_from_torsion(data):
    """det(X - Frob) over F_q[t]/(v^k) as r+1 APoly coefficients."""
    from .residue import berkowitz
    V = data.modulus
    F = V.F

    class _R:
        zero = APoly(F, (), "t")
        one = APoly(F, (1,), "t")

        @staticmethod
        def add(a, b):
            return a + b

        @staticmethod
        def mul(a, b):
            return (a * b) % V

        @staticmethod
        def neg(a):
            return -a

    return [c % V for c in berkowitz(_R, data.frobenius)]
