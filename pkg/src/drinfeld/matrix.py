"""Small dense matrices over K = F_q(θ) (lists of rows of RationalFn)."""

from .poly import APoly, RationalFn


def kzero(F):
    return RationalFn(APoly(F, ()), reduced=True)


def kone(F):
    return RationalFn(APoly(F, (1,)), reduced=True)


def ktheta(F):
    return RationalFn(APoly.x(F), reduced=True)


def zeros(F, n, m=None):
    z = kzero(F)
    return [[z] * (n if m is None else m) for _ in range(n)]


def identity(F, n, scalar=None):
    out = zeros(F, n)
    s = kone(F) if scalar is None else scalar
    for i in range(n):
        out[i][i] = s
    return out


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def neg(a):
    return [[-x for x in r] for r in a]


def mul(a, b):
    n, m = len(a), len(b[0])
    kk = len(b)
    F = a[0][0].F
    z = kzero(F)
    out = []
    for i in range(n):
        row = [z] * m
        ai = a[i]
        for k in range(kk):
            x = ai[k]
            if x.is_zero():
                continue
            bk = b[k]
            for j in range(m):
                y = bk[j]
                if not y.is_zero():
                    row[j] = row[j] + x * y
        out.append(row)
    return out


def scale(a, c):
    return [[c * x for x in r] for r in a]


def twist(a, j):
    return [[x.frobenius_twist(j) for x in r] for r in a]


def is_zero(a):
    return all(x.is_zero() for r in a for x in r)


def equal(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def power(a, e):
    F = a[0][0].F
    result = identity(F, len(a))
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def apply(a, vec):
    """Matrix times a column vector of ring elements supporting * and +."""
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, vec):
            if x.is_zero():
                continue
            term = y * x
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def from_entries(F, rows):
    """Build a K-matrix from ints, APoly or RationalFn entries."""
    from .poly import as_rational
    return [[as_rational(F, x) for x in r] for r in rows]


def to_str(a):
    cells = [[str(x) for x in r] for r in a]
    w = max((len(c) for r in cells for c in r), default=1)
    return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)
