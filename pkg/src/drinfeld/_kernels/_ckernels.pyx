# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over a small finite field F_q.

Same API and semantics as ``_pykernels``; inputs and outputs are plain
Python lists so the two backends are interchangeable.
"""

from libc.stdlib cimport malloc, free

BACKEND = "cython"


cdef class FieldCtx:
    cdef public int q
    cdef int *add_t
    cdef int *sub_t
    cdef int *mul_t
    cdef int *neg_t
    cdef int *inv_t
    cdef public list add, sub, mul, neg, inv

    def __cinit__(self, int q, add, sub, mul, neg, inv):
        cdef int i
        self.q = q
        self.add_t = <int *> malloc(q * q * sizeof(int))
        self.sub_t = <int *> malloc(q * q * sizeof(int))
        self.mul_t = <int *> malloc(q * q * sizeof(int))
        self.neg_t = <int *> malloc(q * sizeof(int))
        self.inv_t = <int *> malloc(q * sizeof(int))
        if not (self.add_t and self.sub_t and self.mul_t and self.neg_t and self.inv_t):
            raise MemoryError()
        for i in range(q * q):
            self.add_t[i] = add[i]
            self.sub_t[i] = sub[i]
            self.mul_t[i] = mul[i]
        for i in range(q):
            self.neg_t[i] = neg[i]
            self.inv_t[i] = inv[i]
        self.add = list(add)
        self.sub = list(sub)
        self.mul = list(mul)
        self.neg = list(neg)
        self.inv = list(inv)

    def __dealloc__(self):
        free(self.add_t)
        free(self.sub_t)
        free(self.mul_t)
        free(self.neg_t)
        free(self.inv_t)


cdef int *_to_c(list a, Py_ssize_t n) except NULL:
    # n >= len(a); extra slots are zero
    cdef Py_ssize_t i, la = len(a)
    cdef int *buf = <int *> malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = a[i] if i < la else 0
    return buf


cdef list _from_c(int *buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


cdef list _from_c_raw(int *buf, Py_ssize_t n):
    return [buf[i] for i in range(n)]


cdef Py_ssize_t _c_rem(FieldCtx ctx, int *r, Py_ssize_t lr, int *b, Py_ssize_t lb, int *quo):
    # in-place remainder of r by b (lb = len(b) >= 1, b[lb-1] != 0);
    # writes quotient into quo if not NULL; returns trimmed length of r
    cdef int q = ctx.q
    cdef int *sub_t = ctx.sub_t
    cdef int *mul_t = ctx.mul_t
    cdef int lead_inv = ctx.inv_t[b[lb - 1]]
    cdef Py_ssize_t db = lb - 1, k, j, base
    cdef int c, cq
    for k in range(lr - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            if quo != NULL:
                quo[k - db] = 0
            continue
        c = mul_t[c * q + lead_inv]
        if quo != NULL:
            quo[k - db] = c
        base = k - db
        cq = c * q
        for j in range(db + 1):
            if b[j]:
                r[base + j] = sub_t[r[base + j] * q + mul_t[cq + b[j]]]
    if lr > db:
        lr = db
    while lr > 0 and r[lr - 1] == 0:
        lr -= 1
    return lr


cdef Py_ssize_t _c_mul(FieldCtx ctx, int *a, Py_ssize_t la, int *b, Py_ssize_t lb, int *out):
    cdef int q = ctx.q
    cdef int *add_t = ctx.add_t
    cdef int *mul_t = ctx.mul_t
    cdef Py_ssize_t i, j, n
    cdef int row
    if la == 0 or lb == 0:
        return 0
    n = la + lb - 1
    for i in range(n):
        out[i] = 0
    for i in range(la):
        if a[i] == 0:
            continue
        row = a[i] * q
        for j in range(lb):
            if b[j]:
                out[i + j] = add_t[out[i + j] * q + mul_t[row + b[j]]]
    while n > 0 and out[n - 1] == 0:
        n -= 1
    return n


def poly_add(FieldCtx ctx, list a, list b):
    cdef Py_ssize_t n = max(len(a), len(b)), i
    cdef int q = ctx.q
    out = [0] * n
    for i in range(n):
        out[i] = ctx.add_t[(a[i] if i < len(a) else 0) * q + (b[i] if i < len(b) else 0)]
    while out and out[len(out) - 1] == 0:
        out.pop()
    return out


def poly_sub(FieldCtx ctx, list a, list b):
    cdef Py_ssize_t n = max(len(a), len(b)), i
    cdef int q = ctx.q
    out = [0] * n
    for i in range(n):
        out[i] = ctx.sub_t[(a[i] if i < len(a) else 0) * q + (b[i] if i < len(b) else 0)]
    while out and out[len(out) - 1] == 0:
        out.pop()
    return out


def poly_scale(FieldCtx ctx, list a, int c):
    if c == 0:
        return []
    cdef int cq = c * ctx.q
    return [ctx.mul_t[cq + <int> x] for x in a]


def poly_mul(FieldCtx ctx, list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), n
    if la == 0 or lb == 0:
        return []
    cdef int *ca = _to_c(a, la)
    cdef int *cb = _to_c(b, lb)
    cdef int *out = <int *> malloc((la + lb) * sizeof(int))
    try:
        n = _c_mul(ctx, ca, la, cb, lb, out)
        return _from_c(out, n)
    finally:
        free(ca)
        free(cb)
        free(out)


def poly_divmod(FieldCtx ctx, list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), lr
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if la < lb:
        return [], list(a)
    cdef int *r = _to_c(a, la)
    cdef int *cb = _to_c(b, lb)
    cdef int *quo = <int *> malloc((la - lb + 1) * sizeof(int))
    try:
        lr = _c_rem(ctx, r, la, cb, lb, quo)
        return _from_c(quo, la - lb + 1), _from_c(r, lr)
    finally:
        free(r)
        free(cb)
        free(quo)


def poly_rem(FieldCtx ctx, list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), lr
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if la < lb:
        return list(a)
    cdef int *r = _to_c(a, la)
    cdef int *cb = _to_c(b, lb)
    try:
        lr = _c_rem(ctx, r, la, cb, lb, NULL)
        return _from_c(r, lr)
    finally:
        free(r)
        free(cb)


def poly_monic(FieldCtx ctx, list a):
    if not a:
        return []
    return poly_scale(ctx, a, ctx.inv_t[<int> a[len(a) - 1]])


def poly_gcd(FieldCtx ctx, list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), n = max(la, lb)
    cdef int *ca = _to_c(a, n)
    cdef int *cb = _to_c(b, n)
    cdef int *x = ca
    cdef int *y = cb
    cdef int *tmp
    cdef Py_ssize_t lx = la, ly = lb, lt, i
    cdef int c
    try:
        while ly > 0:
            lx = _c_rem(ctx, x, lx, y, ly, NULL)
            tmp = x
            x = y
            y = tmp
            lt = lx
            lx = ly
            ly = lt
        if lx > 0:
            c = ctx.inv_t[x[lx - 1]] * ctx.q
            for i in range(lx):
                x[i] = ctx.mul_t[c + x[i]]
        return _from_c(x, lx)
    finally:
        free(ca)
        free(cb)


def poly_xgcd(FieldCtx ctx, list a, list b):
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
    c = ctx.inv_t[<int> r0[len(r0) - 1]]
    return poly_scale(ctx, r0, c), poly_scale(ctx, s0, c), poly_scale(ctx, t0, c)


def poly_mulmod(FieldCtx ctx, list a, list b, list m):
    return poly_rem(ctx, poly_mul(ctx, a, b), m)


def poly_powmod(FieldCtx ctx, list a, e, list m):
    cdef Py_ssize_t lm = len(m)
    if lm == 0:
        raise ZeroDivisionError("modulus is zero")
    if lm == 1:
        return []
    cdef list a0 = poly_rem(ctx, a, m)
    cdef Py_ssize_t lb = len(a0), lr = 1
    cdef int *base = _to_c(a0, lm)
    cdef int *res = <int *> malloc(lm * sizeof(int))
    cdef int *scratch = <int *> malloc(2 * lm * sizeof(int))
    res[0] = 1
    e = int(e)
    cdef Py_ssize_t nbits = e.bit_length(), bit
    try:
        for bit in range(nbits):
            if (e >> bit) & 1:
                lr = _mulmod_list(ctx, res, lr, base, lb, m, scratch)
            if bit + 1 < nbits:
                lb = _mulmod_list(ctx, base, lb, base, lb, m, scratch)
        return _from_c(res, lr)
    finally:
        free(base)
        free(res)
        free(scratch)


cdef Py_ssize_t _mulmod_list(FieldCtx ctx, int *a, Py_ssize_t la, int *b, Py_ssize_t lb,
                             list m, int *scratch):
    # a <- a*b mod m (a has room for len(m) entries)
    cdef Py_ssize_t lm = len(m), n, i
    cdef int *cm = _to_c(m, lm)
    try:
        n = _c_mul(ctx, a, la, b, lb, scratch)
        if n >= lm:
            n = _c_rem(ctx, scratch, n, cm, lm, NULL)
        for i in range(n):
            a[i] = scratch[i]
        return n
    finally:
        free(cm)


def series_mul(FieldCtx ctx, list a, list b, Py_ssize_t n):
    """First n coefficients of the product of two power series."""
    cdef int q = ctx.q
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n), i, j, lim
    cdef int *ca = _to_c(a, la)
    cdef int *cb = _to_c(b, lb)
    cdef int *out = <int *> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int row
    try:
        for i in range(n):
            out[i] = 0
        for i in range(la):
            if ca[i] == 0:
                continue
            row = ca[i] * q
            lim = lb if lb < n - i else n - i
            for j in range(lim):
                if cb[j]:
                    out[i + j] = ctx.add_t[out[i + j] * q + ctx.mul_t[row + cb[j]]]
        return _from_c_raw(out, n)
    finally:
        free(ca)
        free(cb)
        free(out)


def series_inv(FieldCtx ctx, list a, Py_ssize_t n):
    """First n coefficients of 1/a for a power series with a[0] != 0."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("series not invertible")
    cdef int q = ctx.q
    cdef Py_ssize_t la = min(len(a), n + 1), k, j, lim
    cdef int *ca = _to_c(a, la)
    cdef int *out = <int *> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int c0 = ctx.inv_t[ca[0]], s
    try:
        for k in range(n):
            s = 1 if k == 0 else 0
            lim = k if k < la - 1 else la - 1
            for j in range(1, lim + 1):
                if ca[j]:
                    s = ctx.sub_t[s * q + ctx.mul_t[ca[j] * q + out[k - j]]]
            out[k] = ctx.mul_t[s * q + c0]
        return _from_c_raw(out, n)
    finally:
        free(ca)
        free(out)


cdef bint _c_irreducible(FieldCtx ctx, int *f, Py_ssize_t lf, int *h, int *g1, int *g2,
                         int *scratch, int *tmp):
    # Ben-Or test; all work buffers have room for 2*lf entries
    cdef Py_ssize_t d = lf - 1, i, lh, lt, lg1, lg2, bit, nbits
    cdef int q = ctx.q, e
    if d < 1:
        return False
    if d == 1:
        return True
    h[0] = 0
    h[1] = 1
    lh = 2
    nbits = 0
    e = q
    while e > 0:
        nbits += 1
        e >>= 1
    for i in range(d // 2):
        # h <- h^q mod f via square and multiply on tmp
        for bit in range(lh):
            tmp[bit] = h[bit]
        lt = lh
        # result accumulates in g1
        g1[0] = 1
        lg1 = 1
        for bit in range(nbits):
            if (q >> bit) & 1:
                lg1 = _c_mul(ctx, g1, lg1, tmp, lt, scratch)
                if lg1 >= lf:
                    lg1 = _c_rem(ctx, scratch, lg1, f, lf, NULL)
                for e in range(lg1):
                    g1[e] = scratch[e]
            if bit + 1 < nbits:
                lt = _c_mul(ctx, tmp, lt, tmp, lt, scratch)
                if lt >= lf:
                    lt = _c_rem(ctx, scratch, lt, f, lf, NULL)
                for e in range(lt):
                    tmp[e] = scratch[e]
        for e in range(lg1):
            h[e] = g1[e]
        lh = lg1
        # g2 <- h - x ; g1 <- f ; gcd
        for e in range(lh):
            g2[e] = h[e]
        lg2 = lh
        if lg2 < 2:
            for e in range(lg2, 2):
                g2[e] = 0
            lg2 = 2
        g2[1] = ctx.sub_t[g2[1] * q + 1]
        while lg2 > 0 and g2[lg2 - 1] == 0:
            lg2 -= 1
        for e in range(lf):
            g1[e] = f[e]
        lg1 = lf
        if _gcd_len(ctx, g1, lg1, g2, lg2) > 1:
            return False
    return True


cdef Py_ssize_t _gcd_len(FieldCtx ctx, int *a, Py_ssize_t la, int *b, Py_ssize_t lb):
    cdef int *tmp
    cdef Py_ssize_t lt
    while lb > 0:
        la = _c_rem(ctx, a, la, b, lb, NULL)
        tmp = a
        a = b
        b = tmp
        lt = la
        la = lb
        lb = lt
    return la


def is_irreducible(FieldCtx ctx, list f):
    """Ben-Or test for a monic polynomial f."""
    cdef Py_ssize_t lf = len(f)
    if lf < 2:
        return False
    cdef int *cf = _to_c(f, lf)
    cdef int *buf = <int *> malloc(10 * lf * sizeof(int))
    try:
        return bool(_c_irreducible(ctx, cf, lf, buf, buf + 2 * lf, buf + 4 * lf,
                                   buf + 6 * lf, buf + 8 * lf))
    finally:
        free(cf)
        free(buf)


def irreducible_monics(FieldCtx ctx, int d):
    """All monic irreducibles of degree d, ordered by base-q encoding."""
    cdef int q = ctx.q
    cdef Py_ssize_t lf = d + 1, i
    cdef long long code, total = 1, c
    for i in range(d):
        total *= q
    cdef int *f = <int *> malloc(lf * sizeof(int))
    cdef int *buf = <int *> malloc(10 * lf * sizeof(int))
    out = []
    try:
        for code in range(total):
            c = code
            for i in range(d):
                f[i] = c % q
                c //= q
            f[d] = 1
            if d > 1 and f[0] == 0:
                continue
            if _c_irreducible(ctx, f, lf, buf, buf + 2 * lf, buf + 4 * lf,
                              buf + 6 * lf, buf + 8 * lf):
                out.append([f[i] for i in range(lf)])
        return out
    finally:
        free(f)
        free(buf)


def rref(FieldCtx ctx, rows, Py_ssize_t ncols):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    cdef Py_ssize_t nr = len(rows), i, j, c, r = 0, piv
    cdef int q = ctx.q, s, f
    cdef int *m = <int *> malloc((nr * ncols if nr * ncols > 0 else 1) * sizeof(int))
    cdef int *prow
    cdef int *row
    pivots = []
    try:
        for i in range(nr):
            rw = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = rw[j]
        for c in range(ncols):
            if r == nr:
                break
            piv = -1
            for i in range(r, nr):
                if m[i * ncols + c]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    s = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = s
            prow = m + r * ncols
            s = ctx.inv_t[prow[c]] * q
            for j in range(ncols):
                prow[j] = ctx.mul_t[s + prow[j]]
            for i in range(nr):
                row = m + i * ncols
                if i != r and row[c]:
                    f = row[c] * q
                    for j in range(ncols):
                        if prow[j]:
                            row[j] = ctx.sub_t[row[j] * q + ctx.mul_t[f + prow[j]]]
            pivots.append(c)
            r += 1
        return [[m[i * ncols + j] for j in range(ncols)] for i in range(r)], pivots
    finally:
        free(m)


def nullspace(FieldCtx ctx, rows, Py_ssize_t ncols):
    """Basis of {x : M x = 0} as a list of vectors."""
    red, pivots = rref(ctx, rows, ncols)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = ctx.neg_t[<int> red[i][f]]
        basis.append(v)
    return basis


def mat_mul(FieldCtx ctx, a, b):
    cdef Py_ssize_t n = len(a), kk = len(b), m = len(b[0]) if b else 0, i, j, k
    cdef int q = ctx.q, xq
    cdef int *cb = <int *> malloc((kk * m if kk * m > 0 else 1) * sizeof(int))
    cdef int *acc = <int *> malloc((m if m > 0 else 1) * sizeof(int))
    out = []
    try:
        for k in range(kk):
            rw = b[k]
            for j in range(m):
                cb[k * m + j] = rw[j]
        for i in range(n):
            ra = a[i]
            for j in range(m):
                acc[j] = 0
            for k in range(kk):
                xq = ra[k]
                if xq == 0:
                    continue
                xq = xq * q
                for j in range(m):
                    if cb[k * m + j]:
                        acc[j] = ctx.add_t[acc[j] * q + ctx.mul_t[xq + cb[k * m + j]]]
            out.append([acc[j] for j in range(m)])
        return out
    finally:
        free(cb)
        free(acc)


def charpoly(FieldCtx ctx, a):
    """Characteristic polynomial det(x*I - A) via Hessenberg reduction."""
    cdef Py_ssize_t n = len(a), i, j, k, piv
    cdef int q = ctx.q, f, s, prod, c
    cdef int *h = <int *> malloc((n * n if n > 0 else 1) * sizeof(int))
    try:
        for i in range(n):
            rw = a[i]
            for j in range(n):
                h[i * n + j] = rw[j]
        for j in range(n - 2):
            piv = -1
            for i in range(j + 1, n):
                if h[i * n + j]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != j + 1:
                for k in range(n):
                    s = h[piv * n + k]
                    h[piv * n + k] = h[(j + 1) * n + k]
                    h[(j + 1) * n + k] = s
                for k in range(n):
                    s = h[k * n + piv]
                    h[k * n + piv] = h[k * n + j + 1]
                    h[k * n + j + 1] = s
            for i in range(j + 2, n):
                if h[i * n + j] == 0:
                    continue
                f = ctx.mul_t[h[i * n + j] * q + ctx.inv_t[h[(j + 1) * n + j]]] * q
                for k in range(n):
                    if h[(j + 1) * n + k]:
                        h[i * n + k] = ctx.sub_t[h[i * n + k] * q + ctx.mul_t[f + h[(j + 1) * n + k]]]
                for k in range(n):
                    if h[k * n + i]:
                        h[k * n + j + 1] = ctx.add_t[h[k * n + j + 1] * q + ctx.mul_t[f + h[k * n + i]]]
        polys = [[1]]
        for k in range(n):
            pk = poly_mul(ctx, [ctx.neg_t[h[k * n + k]], 1], polys[k])
            prod = 1
            for i in range(k - 1, -1, -1):
                prod = ctx.mul_t[prod * q + h[(i + 1) * n + i]]
                if prod == 0:
                    break
                c = ctx.mul_t[prod * q + h[i * n + k]]
                if c:
                    pk = poly_sub(ctx, pk, poly_scale(ctx, polys[i], c))
            polys.append(pk)
        return polys[n]
    finally:
        free(h)
