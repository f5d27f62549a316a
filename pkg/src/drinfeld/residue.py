"""Residue fields L = A/βA, polynomial rings over them, and small generic
linear algebra used by the local factor computations."""

from ._kernels import K
from .poly import APoly, RationalFn


class ReductionError(ArithmeticError):
    """The module does not have good reduction at the prime (or is not integral there)."""


class ResidueField:
    """A/βA as polynomials of degree < deg β; elements are trimmed int tuples."""

    def __init__(self, beta):
        if not beta.is_monic() or beta.degree < 1:
            raise ValueError("β must be monic of positive degree")
        self.beta = beta
        self.F = beta.F
        self.ctx = beta.F.ctx
        self.q = beta.F.q
        self.e = beta.degree
        self._b = list(beta.c)
        self.zero = ()
        self.one = (1,)
        self.order = self.q ** self.e
        self._frob_cache = {}

    # -- conversion -----------------------------------------------------------
    def reduce(self, x):
        if isinstance(x, int):
            return self.from_fq(self.F.from_int(x))
        if isinstance(x, RationalFn):
            if (x.den % self.beta).is_zero():
                raise ReductionError(f"denominator {x.den} vanishes modulo {self.beta}")
            return tuple(x.reduce_mod(self.beta).c)
        if isinstance(x, APoly):
            return tuple((x % self.beta).c)
        raise TypeError(type(x).__name__)

    def from_fq(self, a):
        return (a,) if a else ()

    def to_apoly(self, a):
        return APoly(self.F, a)

    def coords(self, a):
        return list(a) + [0] * (self.e - len(a))

    def from_coords(self, v):
        return _trim(v)

    def theta(self):
        return self.reduce(APoly.x(self.F))

    # -- arithmetic -------------------------------------------------------------
    def add(self, a, b):
        return tuple(K.poly_add(self.ctx, list(a), list(b)))

    def sub(self, a, b):
        return tuple(K.poly_sub(self.ctx, list(a), list(b)))

    def neg(self, a):
        n = self.F.neg_t
        return tuple(n[x] for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        return tuple(K.poly_mulmod(self.ctx, list(a), list(b), self._b))

    def scale(self, a, c):
        """Multiply by the constant c ∈ F_q."""
        if not c or not a:
            return ()
        return tuple(K.poly_scale(self.ctx, list(a), c))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in A/βA")
        g, s, _ = K.poly_xgcd(self.ctx, list(a), self._b)
        # g is monic of degree 0
        return tuple(s)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return not a

    def pow(self, a, n):
        if n == 0:
            return self.one
        return tuple(K.poly_powmod(self.ctx, list(a), n, self._b))

    def frob(self, a, s=1):
        """a^(q^s); the exponent is reduced modulo deg β."""
        s %= self.e
        if s == 0 or len(a) <= 1:
            return a
        key = (a, s)
        r = self._frob_cache.get(key)
        if r is None:
            r = self.pow(a, self.q ** s)
            if len(self._frob_cache) < 200000:
                self._frob_cache[key] = r
        return r

    def is_constant(self, a):
        return len(a) <= 1

    def constant_value(self, a):
        return a[0] if a else 0

    # -- matrices -----------------------------------------------------------------
    def mul_matrix(self, a):
        """F_q-matrix (acting on coordinate columns) of x ↦ a·x."""
        cols = []
        for j in range(self.e):
            x = (0,) * j + (1,)
            cols.append(self.coords(self.mul(a, x)))
        return [[cols[j][i] for j in range(self.e)] for i in range(self.e)]

    def frobenius_matrix(self):
        """F_q-matrix of x ↦ x^q on the power basis 1, θ, ..., θ^{e-1}."""
        cols = []
        for j in range(self.e):
            x = _trim((0,) * j + (1,))
            cols.append(self.coords(self.pow(x, self.q)))
        return [[cols[j][i] for j in range(self.e)] for i in range(self.e)]

    def elements(self):
        q = self.q
        for code in range(self.order):
            c = []
            for _ in range(self.e):
                c.append(code % q)
                code //= q
            yield _trim(c)

    def __repr__(self):
        return f"A/({self.beta})"


PrimeField = ResidueField


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class FqField:
    """F_q viewed through the same interface as ResidueField (elements are ints)."""

    def __init__(self, F):
        self.F = F
        self.zero, self.one = 0, 1

    def add(self, a, b):
        return self.F.add(a, b)

    def sub(self, a, b):
        return self.F.sub(a, b)

    def neg(self, a):
        return self.F.neg(a)

    def mul(self, a, b):
        return self.F.mul(a, b)

    def inv(self, a):
        return self.F.inv(a)

    def is_zero(self, a):
        return a == 0

    def scale(self, a, c):
        return self.F.mul(a, c)


class PolyRing:
    """Polynomials in t over a coefficient field, optionally modulo a monic
    V ∈ F_q[t].  Elements are tuples of coefficient-field elements."""

    def __init__(self, base, modulus=None):
        self.base = base
        self.mod = None if modulus is None else list(modulus.c)
        self.zero = ()
        self.one = (base.one,)

    def _trim(self, a):
        a = list(a)
        z = self.base.is_zero
        while a and z(a[-1]):
            a.pop()
        return tuple(a)

    def reduce(self, a):
        if self.mod is None or len(a) < len(self.mod):
            return self._trim(a)
        a = list(a)
        n = len(self.mod) - 1
        B = self.base
        for i in range(len(a) - 1, n - 1, -1):
            c = a[i]
            if B.is_zero(c):
                continue
            for j in range(n):
                mj = self.mod[j]
                if mj:
                    a[i - n + j] = B.sub(a[i - n + j], B.scale(c, mj))
            a[i] = B.zero
        return self._trim(a[:n])

    def add(self, a, b):
        B = self.base
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else B.zero
            y = b[i] if i < len(b) else B.zero
            out.append(B.add(x, y))
        return self._trim(out)

    def sub(self, a, b):
        B = self.base
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else B.zero
            y = b[i] if i < len(b) else B.zero
            out.append(B.sub(x, y))
        return self._trim(out)

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        B = self.base
        out = [B.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if B.is_zero(x):
                continue
            for j, y in enumerate(b):
                if not B.is_zero(y):
                    out[i + j] = B.add(out[i + j], B.mul(x, y))
        return self.reduce(out)

    def is_zero(self, a):
        return not a

    def map_coeffs(self, a, f):
        return self._trim([f(x) for x in a])


def berkowitz(R, A):
    """Coefficients (lowest degree first) of det(X·Id - A) over a commutative ring R."""
    n = len(A)
    vect = [R.one]
    for r in range(n):
        a = A[r][r]
        C = [A[i][r] for i in range(r)]
        Rw = A[r][:r]
        Q = [R.one, R.neg(a)]
        cur = C
        for _ in range(r):
            s = R.zero
            for x, y in zip(Rw, cur):
                s = R.add(s, R.mul(x, y))
            Q.append(R.neg(s))
            cur = [_dot(R, A[i][:r], cur) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = R.zero
            for j in range(min(i, r) + 1):
                if i - j < len(Q):
                    s = R.add(s, R.mul(Q[i - j], vect[j]))
            new.append(s)
        vect = new
    return vect[::-1]


def _dot(R, row, vec):
    s = R.zero
    for x, y in zip(row, vec):
        s = R.add(s, R.mul(x, y))
    return s


def rref_generic(B, rows, ncols):
    """Reduced row echelon form over a field object B; returns (rows, pivots)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = None
        for i in range(r, len(m)):
            if not B.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = B.inv(m[r][c])
        m[r] = [B.mul(s, x) for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and not B.is_zero(m[i][c]):
                f = m[i][c]
                row = m[i]
                for j in range(ncols):
                    if not B.is_zero(prow[j]):
                        row[j] = B.sub(row[j], B.mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def solve_columns(B, cols, rhs):
    """Given independent column vectors ``cols`` and vectors in their span,
    return the coordinates of each rhs vector."""
    n = len(cols)
    h = len(cols[0])
    rows = [[cols[j][i] for j in range(n)] + [v[i] for v in rhs] for i in range(h)]
    red, piv = rref_generic(B, rows, n + len(rhs))
    if piv[:n] != list(range(n)) or (len(piv) > n):
        raise ArithmeticError("vector outside the span of the basis")
    out = []
    for k in range(len(rhs)):
        out.append([red[i][n + k] for i in range(n)])
    return out


class SpanTracker:
    """Incrementally maintained row-echelon basis of a subspace."""

    def __init__(self, B, dim):
        self.B = B
        self.dim = dim
        self.rows = []
        self.piv = []

    def _reduce(self, v):
        B = self.B
        v = list(v)
        for row, p in zip(self.rows, self.piv):
            c = v[p]
            if not B.is_zero(c):
                v = [B.sub(x, B.mul(c, y)) for x, y in zip(v, row)]
        return v

    def try_add(self, vecs):
        """Add all vectors if they stay independent; return success."""
        B = self.B
        saved = (self.rows, self.piv)
        for v in vecs:
            w = self._reduce(v)
            p = next((i for i, x in enumerate(w) if not B.is_zero(x)), None)
            if p is None:
                self.rows, self.piv = saved
                return False
            s = B.inv(w[p])
            w = [B.mul(s, x) for x in w]
            new_rows = []
            for row in self.rows:
                c = row[p]
                if not B.is_zero(c):
                    row = [B.sub(x, B.mul(c, y)) for x, y in zip(row, w)]
                new_rows.append(row)
            self.rows = new_rows + [w]
            self.piv = self.piv + [p]
        return True
