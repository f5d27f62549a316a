"""Naive reference computations over a prime field, sharing no code with the package.

Polynomials are int lists, lowest degree first.  Series in 1/θ are int lists
c_0, c_1, ... meaning Σ c_k θ^{-(v+k)} with v supplied separately.
"""

from itertools import product


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def padd(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        s = len(a) - len(m)
        for i, y in enumerate(m):
            a[s + i] = (a[s + i] - c * y) % p
        a = trim(a)
    return trim(a)


def monics(p, d):
    for tail in product(range(p), repeat=d):
        yield list(tail) + [1]


def recip_series(a, p, n):
    """1/a for monic a of degree d: returns c with 1/a = Σ c_k θ^{-(d+k)}, k < n."""
    rev = a[::-1]  # leading 1 first
    out = []
    for k in range(n):
        s = 1 if k == 0 else 0
        for j in range(1, min(k, len(rev) - 1) + 1):
            s -= rev[j] * out[k - j]
        out.append(s % p)
    return out


def zeta(p, n, D, M):
    """Σ_{a monic, deg a ≤ D} a^{-n} as coefficients of θ^0 .. θ^{-(M-1)}."""
    total = [0] * M
    for d in range(D + 1):
        if n * d >= M:
            break
        for a in monics(p, d):
            c = recip_series(a, p, M)
            pw = [1] + [0] * (M - 1)  # powers accumulate with valuation n·d
            for _ in range(n):
                new = [0] * M
                for i, x in enumerate(pw):
                    if x:
                        for j, y in enumerate(c[:M - i]):
                            new[i + j] = (new[i + j] + x * y) % p
                pw = new
            for k in range(M - n * d):
                total[n * d + k] = (total[n * d + k] + pw[k]) % p
    return total


def carlitz_annihilator(p, beta):
    """Least-degree monic f ∈ F_p[t] with f(C_t) = 0 on A/β, by exhaustion."""
    e = len(beta) - 1
    elems = [trim(list(x)) for x in product(range(p), repeat=e)]

    def act(x):
        # C_t(x) = θx + x^p
        xp = [1]
        for _ in range(p):
            xp = pmod(pmul(xp, x, p), beta, p)
        return pmod(padd(pmul([0, 1], x, p), xp if x else [], p), beta, p)

    for deg in range(e + 1):
        for f in monics(p, deg):
            ok = True
            for x in elems:
                acc = []
                for c in reversed(f):  # Horner: acc = C_t(acc) + c·x
                    acc = padd(act(acc) if acc else [], [(c * y) % p for y in x], p)
                if acc:
                    ok = False
                    break
            if ok:
                return f
    raise AssertionError("no annihilator found")
