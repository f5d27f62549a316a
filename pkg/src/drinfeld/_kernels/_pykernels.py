"""Pure-Python reference kernels over a small finite field F_q.

Field elements are ints 0..q-1 and all arithmetic goes through the lookup
tables held by :class:`FieldCtx`.  Polynomials are lists of ints, lowest
degree first, with no trailing zeros.  Matrices are lists of rows.

The compiled module ``_ckernels`` exposes exactly the same functions.
"""

BACKEND = "python"


class FieldCtx:
    """Lookup tables for F_q arithmetic (flattened q*q tables)."""

    def __init__(self, q, add, sub, mul, neg, inv):
        self.q = q
        self.add = list(add)
        self.sub = list(sub)
        self.mul = list(mul)
        self.neg = list(neg)
        self.inv = list(inv)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(ctx, a, b):
    q, add = ctx.q, ctx.add
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = add[out[i] * q + c]
    return _trim(out)


def poly_sub(ctx, a, b):
    q, sub = ctx.q, ctx.sub
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = sub[x * q + y]
    return _trim(out)


def poly_scale(ctx, a, c):
    if c == 0:
        return []
    row = ctx.mul[c * ctx.q:(c + 1) * ctx.q]
    return [row[x] for x in a]


def poly_mul(ctx, a, b):
    if not a or not b:
        return []
    q, add, mul = ctx.q, ctx.add, ctx.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        row = x * q
        for j, y in enumerate(b):
            if y:
                k = i + j
                out[k] = add[out[k] * q + mul[row + y]]
    return _trim(out)


def poly_divmod(ctx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q, sub, mul = ctx.q, ctx.sub, ctx.mul
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    lead_inv = ctx.inv[b[-1]]
    quo = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = mul[c * q + lead_inv]
        quo[k - db] = c
        base = k - db
        cq = c * q
        for j in range(db + 1):
            y = b[j]
            if y:
                r[base + j] = sub[r[base + j] * q + mul[cq + y]]
    return _trim(quo), _trim(r[:db])


def poly_rem(ctx, a, b):
    return poly_divmod(ctx, a, b)[1]


def poly_monic(ctx, a):
    if not a:
        return []
    return poly_scale(ctx, a, ctx.inv[a[-1]])


def poly_gcd(ctx, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_rem(ctx, a, b)
    return poly_monic(ctx, a)


def poly_xgcd(ctx, a, b):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, rem = poly_divmod(ctx, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_sub(ctx, s0, poly_mul(ctx, quo, s1))
        t0, t1 = t1, poly_sub(ctx, t0, poly_mul(ctx, quo, t1))
    if not r0:
        return [], [], []
    c = ctx.inv[r0[-1]]
    return poly_scale(ctx, r0, c), poly_scale(ctx, s0, c), poly_scale(ctx, t0, c)


def poly_mulmod(ctx, a, b, m):
    return poly_rem(ctx, poly_mul(ctx, a, b), m)


def poly_powmod(ctx, a, e, m):
    result = [1] if len(m) > 1 else []
    base = poly_rem(ctx, a, m)
    while e > 0:
        if e & 1:
            result = poly_mulmod(ctx, result, base, m)
        e >>= 1
        if e:
            base = poly_mulmod(ctx, base, base, m)
    return result


def series_mul(ctx, a, b, n):
    """First n coefficients of the product of two power series."""
    q, add, mul = ctx.q, ctx.add, ctx.mul
    out = [0] * n
    la, lb = min(len(a), n), min(len(b), n)
    for i in range(la):
        x = a[i]
        if x == 0:
            continue
        row = x * q
        for j in range(min(lb, n - i)):
            y = b[j]
            if y:
                out[i + j] = add[out[i + j] * q + mul[row + y]]
    return out


def series_inv(ctx, a, n):
    """First n coefficients of 1/a for a power series with a[0] != 0."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("series not invertible")
    q, sub, mul = ctx.q, ctx.sub, ctx.mul
    c0 = ctx.inv[a[0]]
    out = [0] * n
    for k in range(n):
        s = 1 if k == 0 else 0
        for j in range(1, min(k, len(a) - 1) + 1):
            y = a[j]
            if y:
                s = sub[s * q + mul[y * q + out[k - j]]]
        out[k] = mul[s * q + c0]
    return out


def is_irreducible(ctx, f):
    """Ben-Or test for a monic polynomial f."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = poly_powmod(ctx, h, ctx.q, f)
        g = poly_gcd(ctx, poly_sub(ctx, h, x), f)
        if len(g) > 1:
            return False
    return True


def irreducible_monics(ctx, d):
    """All monic irreducibles of degree d, ordered by base-q encoding."""
    q = ctx.q
    out = []
    for code in range(q ** d):
        f = [0] * (d + 1)
        f[d] = 1
        c = code
        for i in range(d):
            f[i] = c % q
            c //= q
        if d > 1 and f[0] == 0:
            continue
        if is_irreducible(ctx, f):
            out.append(f)
    return out


def rref(ctx, rows, ncols):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    q, sub, mul, inv = ctx.q, ctx.sub, ctx.mul, ctx.inv
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv[m[r][c]] * q
        m[r] = [mul[s + x] for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] * q
                row = m[i]
                for j in range(ncols):
                    if prow[j]:
                        row[j] = sub[row[j] * q + mul[f + prow[j]]]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(ctx, rows, ncols):
    """Basis of {x : M x = 0} as a list of vectors."""
    red, pivots = rref(ctx, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = ctx.neg[red[i][f]]
        basis.append(v)
    return basis


def mat_mul(ctx, a, b):
    q, add, mul = ctx.q, ctx.add, ctx.mul
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * n
        for k, x in enumerate(row):
            if x == 0:
                continue
            xq = x * q
            for j, y in enumerate(b[k]):
                if y:
                    acc[j] = add[acc[j] * q + mul[xq + y]]
        out.append(acc)
    return out


def charpoly(ctx, a):
    """Characteristic polynomial det(x*I - A) via Hessenberg reduction."""
    q, add, sub, mul, inv = ctx.q, ctx.add, ctx.sub, ctx.mul, ctx.inv
    n = len(a)
    h = [list(r) for r in a]
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in h:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        for i in range(j + 2, n):
            if h[i][j] == 0:
                continue
            f = mul[h[i][j] * q + inv[h[j + 1][j]]]
            fq = f * q
            ri, rp = h[i], h[j + 1]
            for k in range(n):
                if rp[k]:
                    ri[k] = sub[ri[k] * q + mul[fq + rp[k]]]
            for r in h:
                if r[i]:
                    r[j + 1] = add[r[j + 1] * q + mul[fq + r[i]]]
    # p_k = char poly of the leading k x k block
    polys = [[1]]
    for k in range(n):
        pk = poly_mul(ctx, [ctx.neg[h[k][k]], 1], polys[k])
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = mul[prod * q + h[i + 1][i]]
            if prod == 0:
                break
            c = mul[prod * q + h[i][k]]
            if c:
                pk = poly_sub(ctx, pk, poly_scale(ctx, polys[i], c))
        polys.append(pk)
    return polys[n]
