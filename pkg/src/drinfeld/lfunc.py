"""Point counts over A/βA, Taelman and Goss L-values, Carlitz zeta values and
Frobenius characteristic polynomials."""

from ._kernels import K
from .laurent import LaurentSeries
from .motive import drinfeld_charpoly, local_charpoly_motive, reduce_coefficients
from .poly import APoly, RationalFn, monic_irreducibles, monics
from .residue import ReductionError, ResidueField
from .torsion import charpoly_from_torsion, torsion_kernel


class ConsistencyError(ArithmeticError):
    """A local factor failed one of its structural identities."""


class DivergenceRefused(ArithmeticError):
    """An Euler factor is not a 1-unit, so the product is not formed."""


def _residue(beta):
    return ResidueField(beta)


# -- counting --------------------------------------------------------------------


def t_action_matrix(G, beta, lie=False):
    """F_q-matrix of x ↦ φ̄(t)x on (A/βA)^d (only A_0 when ``lie``).

    Coordinates are ordered by module coordinate, then by the power basis.
    """
    L = _residue(beta)
    e, d = L.e, G.d
    Fr = L.frobenius_matrix()
    frob_pows = [_identity(e)]
    mats = G.coeffs[:1] if lie else G.coeffs
    for _ in range(1, len(mats)):
        frob_pows.append(K.mat_mul(L.ctx, Fr, frob_pows[-1]))
    N = d * e
    T = [[0] * N for _ in range(N)]
    for m, A in enumerate(mats):
        for i in range(d):
            for j in range(d):
                x = A[i][j]
                if x.is_zero():
                    continue
                if not x.is_integral() and (x.den % beta).is_zero():
                    raise ReductionError(f"entry {x} is not integral at {beta}")
                blk = K.mat_mul(L.ctx, L.mul_matrix(L.reduce(x)), frob_pows[m])
                for a in range(e):
                    row = T[i * e + a]
                    for b in range(e):
                        if blk[a][b]:
                            row[j * e + b] = L.F.add(row[j * e + b], blk[a][b])
    return T


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _charpoly_t(F, T):
    return APoly(F, K.charpoly(F.ctx, T), "t")


def count_module(G, beta):
    """|Ḡ(A/βA)| as a monic polynomial in t."""
    return _charpoly_t(G.F, t_action_matrix(G, beta))


def count_lie(G, beta):
    """|Lie(Ḡ)(A/βA)|; always β(t)^d."""
    out = _charpoly_t(G.F, t_action_matrix(G, beta, lie=True))
    if out != beta.substitute("t") ** G.d:
        raise ConsistencyError("Lie count differs from β(t)^d")
    return out


# -- Frobenius characteristic polynomial ---------------------------------------


class FrobeniusPoly:
    """Q_β(X) = X^r + b_{r-1}X^{r-1} + ... + b_0 with b_0 = c·β(t)^w."""

    def __init__(self, beta, coeffs, c, weight, method, aux=()):
        self.beta = beta
        self.coeffs = list(coeffs)
        self.c = c
        self.weight = weight
        self.method = method
        self.aux = list(aux)

    @property
    def rank(self):
        return len(self.coeffs) - 1

    def at(self, x):
        """Q_β(x) for x ∈ F_q[t] (or an int)."""
        acc = APoly(self.coeffs[0].F, (), "t")
        for b in reversed(self.coeffs):
            acc = acc * x + b
        return acc

    def reversed_poly(self):
        """P_β(X) = X^r Q_β(1/X), coefficients lowest degree first."""
        return self.coeffs[::-1]

    def __eq__(self, other):
        return isinstance(other, FrobeniusPoly) and self.coeffs == other.coeffs

    def __str__(self):
        parts = []
        for i in range(self.rank, -1, -1):
            b = self.coeffs[i]
            if b.is_zero():
                continue
            mon = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if i == self.rank:
                parts.append(mon)
            elif not mon:
                parts.append(f"({b})")
            else:
                parts.append(f"({b}){mon}")
        return " + ".join(parts)

    def to_json(self):
        return {"coeffs": [b.to_json() for b in self.coeffs], "c": self.c, "weight": self.weight}


def default_aux_primes(F, beta, degree2=True):
    """Primes t - c (c ∈ F_q), then degree-2 primes, omitting v with v(θ) = β."""
    out = [APoly(F, (F.neg(c), 1), "t") for c in range(F.q)]
    if degree2:
        out.extend(monic_irreducibles(F, 2, "t"))
    return [v for v in out if v.substitute("θ") != beta]


def aux_schedule(primes, bound):
    """Exponents k_v (round robin over ``primes``) with Σ k_v·deg v ≥ bound."""
    ks = [0] * len(primes)
    total = 0
    i = 0
    while total < max(bound, 1):
        ks[i % len(primes)] += 1
        total += primes[i % len(primes)].degree
        i += 1
    return [(v, k) for v, k in zip(primes, ks) if k]


def _crt(pairs):
    """Solve x ≡ a_j mod m_j; returns (x, M) with deg x < deg M."""
    x, M = pairs[0]
    x = x % M
    for a, m in pairs[1:]:
        g, s, _ = M.xgcd(m)
        if not g.is_one():
            raise ValueError("CRT moduli are not coprime")
        # x + M·s·(a - x) mod M·m
        x = (x + M * ((s * (a - x)) % m)) % (M * m)
        M = M * m
    return x, M


def _is_drinfeld_shape(G):
    return G.d == 1 and G.rank is not None and len(G.coeffs) - 1 == G.rank


def frobenius_charpoly(G, beta, method="auto", aux_primes=None, weight=None, check=True):
    """Q_β(X) of the Frobenius of Ḡ at the good prime β.

    method: 'drinfeld' (exact, dimension 1), 'motive' (motive quotient mod v^k
    and CRT), 'torsion' (explicit torsion points mod v^k and CRT), or 'auto'.
    """
    F = G.F
    r = G.rank
    if r is None:
        raise ValueError("the module's rank must be known")
    w = weight if weight is not None else G.weight
    if method == "auto":
        method = "drinfeld" if _is_drinfeld_shape(G) else "motive"
    L = _residue(beta)
    bt = beta.substitute("t")
    if method == "drinfeld":
        if not _is_drinfeld_shape(G):
            raise ValueError("the 'drinfeld' method needs φ(t) = θ + a_1τ + ... + a_rτ^r")
        coeffs = drinfeld_charpoly(reduce_coefficients(G, L), L)
        w = 1 if w is None else w
        aux = []
    else:
        if w is None:
            raise ValueError("a weight is required for custom modules")
        bound = w * beta.degree
        primes = list(aux_primes) if aux_primes is not None else default_aux_primes(F, beta)
        for v in primes:
            if v.substitute("θ") == beta:
                raise ValueError(f"auxiliary prime {v} coincides with β")
        sched = aux_schedule(primes, bound)
        residues = []
        if method == "motive":
            Abar = reduce_coefficients(G, L)
            for v, k in sched:
                residues.append((local_charpoly_motive(Abar, L, v, k, r), v ** k))
        elif method == "torsion":
            for v, k in sched:
                data = torsion_kernel(G, beta, v, k, r)
                residues.append((charpoly_from_torsion(data), v ** k))
        else:
            raise ValueError(f"unknown method {method!r}")
        coeffs = []
        for i in range(r + 1):
            if i == 0:
                coeffs.append(None)
                continue
            x, M = _crt([(res[i], V) for res, V in residues])
            if i < r and x.degree >= bound:
                raise ConsistencyError(f"b_{i} violates the degree bound {bound}")
            coeffs.append(x)
        # b_0 = c·β(t)^w, with c read off any residue
        cs = set()
        for res, V in residues:
            inv = (bt ** w % V).inverse_mod(V)
            cval = (res[0] * inv) % V
            if cval.degree > 0:
                raise ConsistencyError("Q_β(0)/β(t)^w is not a constant")
            cs.add(cval[0])
        if len(cs) != 1 or 0 in cs:
            raise ConsistencyError("inconsistent normalization across auxiliary primes")
        coeffs[0] = (bt ** w).scale(cs.pop())
        aux = sched
    b0 = coeffs[0]
    q0, rem = divmod(b0, bt ** w)
    if not rem.is_zero() or q0.degree != 0:
        raise ConsistencyError(f"Q_β(0) = {b0} is not a constant multiple of β(t)^{w}")
    c = q0[0]
    fp = FrobeniusPoly(beta, coeffs, c, w, method, aux)
    if check:
        cnt = count_module(G, beta)
        if fp.at(1) != cnt.scale(c):
            raise ConsistencyError(f"c^(-1)Q_β(1) = {fp.at(1).scale(F.inv(c))} but the count is {cnt}")
        for i in range(1, r):
            if coeffs[i].degree >= w * beta.degree:
                raise ConsistencyError(f"deg b_{i} exceeds the weight bound")
    return fp


# -- local factors ----------------------------------------------------------------


class LocalFactor:
    """Per-prime data: β, the two counts and optionally Q_β with its constant c."""

    def __init__(self, beta, count_G, count_Lie, qpoly=None, c=None):
        self.beta = beta
        self.count_G = count_G
        self.count_Lie = count_Lie
        self.qpoly = qpoly
        self.c = c

    def check(self):
        """Verify the structural identities; returns a list of problems."""
        problems = []
        if self.qpoly is not None:
            F = self.beta.F
            q1 = _eval_q(self.qpoly, 1)
            if self.c is None or q1.scale(F.inv(self.c)) != self.count_G:
                problems.append("c^(-1)Q(1) differs from count_G")
            if self.qpoly[0] != self.count_Lie.scale(self.c or 1):
                problems.append("Q(0) differs from c·count_Lie")
        return problems

    def to_json(self):
        out = {"beta": self.beta.to_json(), "count_G": self.count_G.to_json(),
               "count_Lie": self.count_Lie.to_json()}
        if self.qpoly is not None:
            out["qpoly"] = [b.to_json() for b in self.qpoly]
            out["c"] = self.c
        return out

    @classmethod
    def from_json(cls, F, obj):
        beta = APoly.from_json(F, obj["beta"])
        q = obj.get("qpoly")
        qpoly = None if q is None else [APoly.from_json(F, b, "t") for b in q]
        return cls(beta, APoly.from_json(F, obj["count_G"], "t"),
                   APoly.from_json(F, obj["count_Lie"], "t"), qpoly, obj.get("c"))


def _eval_q(coeffs, x):
    acc = APoly(coeffs[0].F, (), "t")
    for b in reversed(coeffs):
        acc = acc * x + b
    return acc


def local_factor(G, beta, with_q=False, method="auto", cache=None):
    key = None
    if cache is not None:
        key = G.content_hash()
        hit = cache.get(key, beta)
        if hit is not None and (hit.qpoly is not None or not with_q):
            return hit
    lf = LocalFactor(beta, count_module(G, beta), count_lie(G, beta))
    if with_q:
        fp = frobenius_charpoly(G, beta, method=method)
        lf.qpoly, lf.c = fp.coeffs, fp.c
    if cache is not None:
        cache.put(key, lf)
    return lf


def dual_factor_at_one(lf):
    """Q_β(1)/Q_β(0) as an element of F_q(t)."""
    if lf.qpoly is None:
        raise ValueError("local factor has no Frobenius polynomial")
    q0 = lf.qpoly[0]
    if q0.is_zero():
        raise ConsistencyError("Q_β(0) = 0 at a good prime")
    return RationalFn(_eval_q(lf.qpoly, 1), q0)


# -- L-values --------------------------------------------------------------------


class LValue:
    """A truncated Euler product or direct sum in K_∞."""

    def __init__(self, value, D, M, stabilized, per_prime=None, skipped=(), stable_to=None):
        self.value = value
        self.D = D
        self.M = M
        self.stabilized = stabilized
        self.per_prime = per_prime
        self.skipped = list(skipped)
        self.stable_to = stable_to

    def to_json(self):
        out = {"value": self.value.to_json(), "D": self.D, "M": self.M,
               "stabilized": self.stabilized, "stable_to": self.stable_to,
               "skipped_primes": [b.to_json() for b in self.skipped]}
        return out


def _theta(p):
    return p.substitute("θ")


def _factor_series(num, den, M):
    """num(θ)/den(θ) in K_∞ to precision M; must be a 1-unit."""
    f = LaurentSeries.from_rational(RationalFn(_theta(num), _theta(den)), M)
    if (f - 1).valuation <= 0:
        raise DivergenceRefused(f"Euler factor {num}/{den} is not a 1-unit")
    return f


def _euler_product(F, D, M, factor_fn, keep=False):
    """Shared accumulation for Taelman and dual Goss products."""
    value = LaurentSeries.one(F).truncate(M)
    previous = None
    per = {} if keep else None
    skipped = []
    for d in range(1, D + 1):
        previous = value
        for beta in monic_irreducibles(F, d):
            try:
                num, den = factor_fn(beta)
            except ReductionError:
                skipped.append(beta)
                continue
            f = _factor_series(num, den, M)
            if keep:
                per[beta] = (num, den)
            value = (value * f).truncate(M)
    stable_to = value.agreement(previous) if previous is not None else None
    stable_to = M if stable_to is None else min(stable_to, M)
    return value, stable_to >= M, per, skipped, stable_to


def taelman_factor(G, beta, cache=None):
    """(count_Lie, count_G): the Taelman factor is their ratio at t = θ."""
    lf = local_factor(G, beta, cache=cache)
    return lf.count_Lie, lf.count_G


def taelman_L(G, D, M, keep_factors=False, cache=None):
    """∏_{deg β ≤ D} |Lie(Ḡ)(A/βA)| / |Ḡ(A/βA)| evaluated in K_∞ mod θ^{-M}."""
    if D < 1:
        raise ValueError("D must be >= 1")
    if not G.is_integral():
        raise ReductionError("the module must be defined over A (use integral_model)")
    value, stab, per, skipped, stable_to = _euler_product(
        G.F, D, M, lambda b: taelman_factor(G, b, cache), keep_factors)
    return LValue(value, D, M, stab, per, skipped, stable_to)


def goss_factor(fp, n):
    """(num, den) in F_q[t] with P_β(β(t)^{-n})^{-1} = num/den."""
    bt = fp.beta.substitute("t")
    r = fp.rank
    # P(X) = Σ_i b_i X^{r-i}; multiply through by β^{nr}
    den = APoly(bt.F, (), "t")
    for i, b in enumerate(fp.coeffs):
        den = den + b * bt ** (n * i)
    return bt ** (n * r), den


def goss_L(G, n, D, M, mode="goss", method="auto", keep_factors=False, cache=None):
    """Goss L-value L_S(M, n) as a truncated Euler product mod θ^{-M}.

    mode 'dual' returns ∏ Q_β(0)/Q_β(1), which equals the Taelman product.
    Primes where the reduction is bad are skipped and reported.
    """
    if n < 1 and mode == "goss":
        raise ValueError("n must be >= 1")

    def fn(beta):
        fp = _cached_q(G, beta, method, cache)
        if mode == "goss":
            return goss_factor(fp, n)
        if mode == "dual":
            return fp.coeffs[0], fp.at(1)
        raise ValueError(f"unknown mode {mode!r}")

    value, stab, per, skipped, stable_to = _euler_product(G.F, D, M, fn, keep_factors)
    return LValue(value, D, M, stab, per, skipped, stable_to)


def _cached_q(G, beta, method, cache):
    if cache is not None:
        lf = local_factor(G, beta, with_q=True, method=method, cache=cache)
        return FrobeniusPoly(beta, lf.qpoly, lf.c, G.weight, "cache")
    return frobenius_charpoly(G, beta, method=method)


# -- Carlitz zeta values ------------------------------------------------------------


def zeta_tail_bound(q, n, d):
    """Lower bound for v(Σ_{a monic, deg a = d} a^{-n}).

    Expanding a^{-n} in the lower coefficients, a monomial survives the sum
    over F_q^d only if every coefficient occurs with exponent ≥ q-1.
    """
    return n * d + (q - 1) * d * (d + 1) // 2


def zeta_direct(F, n, D=None, M=15):
    """ζ_A(n) = Σ_{a ∈ A_+} a^{-n}; partial sum over deg a ≤ D.

    The precision of the result is min(M, bound for the first omitted
    degree), so the value is correct to its stated precision.  With D None
    the cutoff is the least one whose tail is already below θ^{-M}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    q = F.q
    if D is None:
        D = 0
        while zeta_tail_bound(q, n, D + 1) < M:
            D += 1
    prec = min(M, zeta_tail_bound(q, n, D + 1))
    total = LaurentSeries.one(F).truncate(prec)
    for d in range(1, D + 1):
        if n * d >= prec:
            break
        if zeta_tail_bound(q, n, d) >= prec:
            continue
        s = LaurentSeries.zero(F, prec)
        for a in monics(F, d):
            s = s + LaurentSeries.from_poly(a).power(-n, prec)
        total = (total + s).truncate(prec)
    return total


# -- eigenvalue transforms ------------------------------------------------------------


class TransformReport:
    def __init__(self, beta, ok, details):
        self.beta = beta
        self.ok = ok
        self.details = details

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"TransformReport(beta={self.beta}, ok={self.ok}, details={self.details})"


def _elementary(fp):
    """e_k(α) = (-1)^k b_{r-k} as APoly in t, k = 0..r."""
    r = fp.rank
    out = []
    for k in range(r + 1):
        b = fp.coeffs[r - k]
        out.append(-b if k % 2 else b)
    return out


def _from_elementary(es):
    """Monic polynomial with the given elementary symmetric functions (in F_q(t))."""
    r = len(es) - 1
    coeffs = [None] * (r + 1)
    for k in range(r + 1):
        e = es[k]
        coeffs[r - k] = -e if k % 2 else e
    return coeffs


def _as_poly(x):
    if isinstance(x, RationalFn):
        if not x.den.is_one():
            return None
        return x.num
    return x


def eigenvalue_transform_check(phi, n, beta, method="auto"):
    """Compare Q_β of G̃_n and G'_n against the root transforms of Q_β(φ).

    G̃_n has roots β^{n+1}α_i/Π and G'_n has roots β^{n+1}/α_i, where
    α_i are the roots of Q_β(φ) and Π = α_1⋯α_r = (-1)^r b_0.
    """
    from .tmodule import make_g_prime, make_g_tilde
    fp = frobenius_charpoly(phi, beta, method="drinfeld")
    r = fp.rank
    e = _elementary(fp)
    bt = beta.substitute("t")
    Pi = e[r]
    details = {}
    ok = True
    tilde = make_g_tilde(phi, n)
    prime = make_g_prime(phi, n)
    B = bt ** (n + 1)
    exp_tilde = [RationalFn(B ** k * e[k], Pi ** k) for k in range(r + 1)]
    exp_prime = [RationalFn(B ** k * e[r - k], Pi) for k in range(r + 1)]
    for name, G, es in (("g_tilde", tilde, exp_tilde), ("g_prime", prime, exp_prime)):
        target = [_as_poly(x) for x in _from_elementary(es)]
        if any(x is None for x in target):
            ok = False
            details[name] = "transformed polynomial is not integral"
            continue
        target = [x.substitute("t") for x in target]
        got = frobenius_charpoly(G, beta, method=method)
        match = got.coeffs == target
        details[name] = {"match": match, "computed": [str(b) for b in got.coeffs],
                         "expected": [str(b) for b in target]}
        ok = ok and match
    return TransformReport(beta, ok, details)
