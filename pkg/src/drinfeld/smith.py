"""Smith normal form over F_q[t], used as an independent check on point counts."""

from .poly import APoly


def _min_entry(M, k):
    best = None
    n, m = len(M), len(M[0])
    for i in range(k, n):
        for j in range(k, m):
            x = M[i][j]
            if not x.is_zero() and (best is None or x.degree < best[0]):
                best = (x.degree, i, j)
    return best


def smith_form(M):
    """Diagonal of the Smith normal form of a square APoly matrix (monic, d_i | d_{i+1})."""
    M = [list(row) for row in M]
    n = len(M)
    if n == 0:
        return []
    F = M[0][0].F
    var = M[0][0].var
    zero = APoly(F, (), var)
    for k in range(n):
        while True:
            best = _min_entry(M, k)
            if best is None:
                return [M[i][i].monic() for i in range(k)] + [zero] * (n - k)
            _, i, j = best
            M[k], M[i] = M[i], M[k]
            for row in M:
                row[k], row[j] = row[j], row[k]
            p = M[k][k]
            clean = True
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    qt, r = divmod(M[i][k], p)
                    M[i] = [a - qt * b for a, b in zip(M[i], M[k])]
                    clean = clean and r.is_zero()
            for j in range(k + 1, n):
                if not M[k][j].is_zero():
                    qt, r = divmod(M[k][j], p)
                    for row in M:
                        row[j] = row[j] - qt * row[k]
                    clean = clean and r.is_zero()
            if not clean:
                continue
            # the pivot must divide every remaining entry
            bad = next(((i, j) for i in range(k + 1, n) for j in range(k + 1, n)
                        if not (M[i][j] % p).is_zero()), None)
            if bad is None:
                break
            M[k] = [a + b for a, b in zip(M[k], M[bad[0]])]
    return [M[i][i].monic() for i in range(n)]


def invariant_factors(T, F):
    """Nontrivial invariant factors of the F_q[t]-module (F_q^N, t ↦ T)."""
    n = len(T)
    t = APoly.x(F, "t")
    M = [[(t if i == j else APoly(F, (), "t")) - APoly(F, (T[i][j],), "t") for j in range(n)]
         for i in range(n)]
    return [d for d in smith_form(M) if not d.is_one()]


def module_order(T, F):
    """Product of the invariant factors."""
    out = APoly(F, (1,), "t")
    for d in invariant_factors(T, F):
        out = out * d
    return out
