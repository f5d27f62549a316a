"""Exponential and logarithm series of t-modules, their evaluation, Anderson
generating functions and quasi-periods of Drinfeld modules."""

from fractions import Fraction
from math import ceil

from . import matrix as mx
from .laurent import KummerElem, LaurentSeries
from .poly import APoly, RationalFn, as_rational
from .tate import TateSeries, eval_at_theta


class ConvergenceError(ArithmeticError):
    """The evaluation could not certify convergence within the allowed terms."""


class PeriodError(ValueError):
    """A supplied vector is not a period to the requested tolerance."""


class FracMat:
    """Matrix over K stored as (polynomial matrix) / (common monic denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    @classmethod
    def from_kmatrix(cls, F, A):
        den = APoly(F, (1,))
        for row in A:
            for x in row:
                if not x.den.is_one():
                    den = (den * x.den) // den.gcd(x.den)
        num = [[x.num * (den // x.den) for x in row] for row in A]
        return cls(num, den)

    @classmethod
    def zero(cls, F, n):
        z = APoly(F, ())
        return cls([[z] * n for _ in range(n)], APoly(F, (1,)))

    @property
    def F(self):
        return self.den.F

    def is_zero(self):
        return all(x.is_zero() for row in self.num for x in row)

    def to_kmatrix(self):
        return [[RationalFn(x, self.den) for x in row] for row in self.num]

    def entry(self, i, j):
        return RationalFn(self.num[i][j], self.den)

    def _with_den(self, den):
        f = den // self.den
        if f.is_one():
            return self.num
        return [[x * f for x in row] for row in self.num]

    def __add__(self, other):
        g = self.den.gcd(other.den)
        den = (self.den // g) * other.den
        a, b = self._with_den(den), other._with_den(den)
        return FracMat([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)], den)

    def __neg__(self):
        return FracMat([[-x for x in row] for row in self.num], self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        n, m, kk = len(self.num), len(other.num[0]), len(other.num)
        F = self.F
        z = APoly(F, ())
        out = []
        for i in range(n):
            row = [z] * m
            for k in range(kk):
                x = self.num[i][k]
                if x.is_zero():
                    continue
                ok = other.num[k]
                for j in range(m):
                    y = ok[j]
                    if not y.is_zero():
                        row[j] = row[j] + x * y
            out.append(row)
        return FracMat(out, self.den * other.den)

    def scale_poly(self, p):
        return FracMat([[x * p for x in row] for row in self.num], self.den)

    def div_poly(self, p):
        """Divide by a nonzero polynomial p."""
        lc = p.lead()
        if lc != 1:
            inv = self.F.inv(lc)
            return FracMat([[x.scale(inv) for x in row] for row in self.num], self.den * p.scale(inv))
        return FracMat(self.num, self.den * p)

    def twist(self, j):
        if j == 0:
            return self
        return FracMat([[x.frobenius_twist(j) for x in row] for row in self.num],
                       self.den.frobenius_twist(j))

    def reduced(self):
        g = self.den
        for row in self.num:
            for x in row:
                if not x.is_zero():
                    g = g.gcd(x)
                    if g.is_one():
                        return self
        if self.is_zero():
            return FracMat(self.num, APoly(self.F, (1,)))
        return FracMat([[x // g for x in row] for row in self.num], self.den // g)

    def __eq__(self, other):
        return all(x * other.den == y * self.den
                   for ra, rb in zip(self.num, other.num) for x, y in zip(ra, rb))


def _sylvester(F, A0N, k, R):
    """Solve X·A_0^{(k)} - A_0·X = R for X, with A_0 = θ·Id + N.

    Writing δ = θ^{q^k} - θ and S(X) = X·N^{(k)} - N·X the equation reads
    (δ + S)X = R, so X = Σ_i (-1)^i S^i(R) / δ^{i+1}; S is nilpotent.
    """
    q = F.q
    theta = APoly.x(F)
    delta = APoly.monomial(F, q ** k) - theta
    Nk = A0N.twist(k)
    terms = []
    cur = R
    d = len(R.num)
    for _ in range(2 * d):
        if cur.is_zero():
            break
        terms.append(cur)
        cur = cur * Nk - A0N * cur
    else:
        if not cur.is_zero():
            raise ArithmeticError("ad_N failed to be nilpotent")
    if not terms:
        return FracMat.zero(F, d)
    # common denominator δ^{len(terms)}
    L = len(terms)
    total = None
    for i, T in enumerate(terms):
        piece = T.scale_poly(delta ** (L - 1 - i))
        if i % 2:
            piece = -piece
        total = piece if total is None else total + piece
    # no gcd reduction here: the cancellation is tiny and the gcds dominate the cost
    return total.div_poly(delta ** L)


class ExpLogSeries:
    """Coefficients α_0 = Id, α_1, ... of Exp (kind 'exp') or Log (kind 'log')."""

    def __init__(self, module, kind, coeffs):
        self.module = module
        self.kind = kind
        self._coeffs = list(coeffs)
        self._lcache = {}

    @property
    def computed_to(self):
        return len(self._coeffs) - 1

    def coeff(self, k):
        """α_k as a K-matrix."""
        return self._coeffs[k].to_kmatrix()

    def coeff_frac(self, k):
        return self._coeffs[k]

    def __len__(self):
        return len(self._coeffs)

    def extend(self, k_max):
        """New series computed through τ^{k_max} (self is left unchanged)."""
        if k_max <= self.computed_to:
            return ExpLogSeries(self.module, self.kind, self._coeffs[:k_max + 1])
        G = self.module
        F = G.F
        A = [FracMat.from_kmatrix(F, c) for c in G.coeffs]
        A0N = FracMat.from_kmatrix(F, G.N)
        coeffs = list(self._coeffs)
        m = len(A) - 1
        for k in range(len(coeffs), k_max + 1):
            R = None
            for j in range(1, min(k, m) + 1):
                if A[j].is_zero():
                    continue
                if self.kind == "exp":
                    term = A[j] * coeffs[k - j].twist(j)
                else:
                    term = -(coeffs[k - j] * A[j].twist(k - j))
                R = term if R is None else R + term
            if R is None:
                coeffs.append(FracMat.zero(F, G.d))
            else:
                coeffs.append(_sylvester(F, A0N, k, R))
        return ExpLogSeries(G, self.kind, coeffs)

    def laurent_coeff(self, k, prec):
        """Entries of α_k expanded in K_∞ to precision ``prec`` (cached)."""
        key = (k, prec)
        if key not in self._lcache:
            fm = self._coeffs[k]
            out = []
            for row in fm.num:
                r = []
                for x in row:
                    if x.is_zero():
                        r.append(None)
                        continue
                    # entry = x/den has valuation dv - deg x; invert den accordingly
                    inv = LaurentSeries.from_poly(fm.den).inverse(prec + x.degree)
                    r.append((LaurentSeries.from_poly(x) * inv).truncate(prec))
                out.append(r)
            self._lcache[key] = out
        return self._lcache[key]

    def valuations(self, k):
        """Valuations of the nonzero entries of α_k (None for zero entries)."""
        fm = self._coeffs[k]
        return [[None if x.is_zero() else fm.den.degree - x.degree for x in row]
                for row in fm.num]


def _identity_series(G, kind):
    F = G.F
    return ExpLogSeries(G, kind, [FracMat.from_kmatrix(F, mx.identity(F, G.d))])


def exp_series(G, k_max):
    """Exp coefficients through τ^{k_max}; results are cached on the module."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    base = G._exp or _identity_series(G, "exp")
    s = base.extend(k_max)
    if G._exp is None or s.computed_to > G._exp.computed_to:
        G._exp = s
    return s


def log_series(G, k_max):
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    base = G._log or _identity_series(G, "log")
    s = base.extend(k_max)
    if G._log is None or s.computed_to > G._log.computed_to:
        G._log = s
    return s


def functional_equation_residual(G, series):
    """Per-degree residuals of Exp·dφ(t) = φ(t)·Exp (or the Log analogue).

    Returns a list of FracMat that must all be zero.
    """
    F = G.F
    A = [FracMat.from_kmatrix(F, c) for c in G.coeffs]
    out = []
    for k in range(series.computed_to + 1):
        if series.kind == "exp":
            lhs = series.coeff_frac(k) * A[0].twist(k)
            rhs = None
            for j in range(0, min(k, len(A) - 1) + 1):
                t = A[j] * series.coeff_frac(k - j).twist(j)
                rhs = t if rhs is None else rhs + t
        else:
            lhs = A[0] * series.coeff_frac(k)
            rhs = None
            for j in range(0, min(k, len(A) - 1) + 1):
                t = series.coeff_frac(k - j) * A[j].twist(k - j)
                rhs = t if rhs is None else rhs + t
        out.append((lhs - rhs).reduced())
    return out


def composition_residual(exp_s, log_s):
    """Coefficients of Log∘Exp - Id through the common range (all zero)."""
    n = min(exp_s.computed_to, log_s.computed_to)
    out = []
    for k in range(n + 1):
        acc = None
        for i in range(k + 1):
            t = log_s.coeff_frac(i) * exp_s.coeff_frac(k - i).twist(i)
            acc = t if acc is None else acc + t
        if k == 0:
            acc = acc - exp_s.coeff_frac(0)
        out.append(acc.reduced())
    return out


# -- evaluation -----------------------------------------------------------------


def _as_vector(G, x):
    F = G.F
    if isinstance(x, (LaurentSeries, KummerElem, RationalFn, APoly, int)):
        x = [x]
    out = []
    for c in x:
        if isinstance(c, (RationalFn, APoly, int)):
            c = as_rational(F, c)
            out.append(c)
        else:
            out.append(c)
    if len(out) != G.d:
        raise ValueError(f"expected a vector of length {G.d}")
    return out


def _to_series(F, c, prec):
    if isinstance(c, RationalFn):
        return LaurentSeries.from_rational(c, prec)
    return c


def _val(c):
    """Valuation lower bound of a series value (precision when zero-to-precision)."""
    if isinstance(c, KummerElem):
        if c.is_exact_zero():
            return None
        return c.valuation()
    if c.is_exact_zero():
        return None
    return Fraction(c.valuation)


def _prec(c):
    return c.prec


def _evaluate(series_fn, G, x, M, k_max, kind):
    F = G.F
    xs = [_to_series(F, c, M + 4) for c in _as_vector(G, x)]
    if all(_val(c) is None for c in xs):
        return [LaurentSeries.zero(F) for _ in xs]
    zero_like = [c * 0 if isinstance(c, KummerElem) else LaurentSeries.zero(F, M) for c in xs]
    acc = None
    sizes = []
    s = series_fn(G, 0)
    for k in range(k_max + 1):
        if k > s.computed_to:
            s = series_fn(G, min(k_max, max(2 * k, k + 2)))
        xk = [c.twist(k) for c in xs]
        vx = [_val(c) for c in xk]
        vals = s.valuations(k)
        term = list(zero_like)
        size = None
        # lower bound for the norm of this term
        for i in range(G.d):
            for j in range(G.d):
                if vals[i][j] is None or vx[j] is None:
                    continue
                b = vals[i][j] + vx[j]
                size = b if size is None else min(size, b)
        if size is not None and size < M:
            for j in range(G.d):
                if vx[j] is None:
                    continue
                P = int(ceil(M - vx[j]))
                Lk = s.laurent_coeff(k, P)
                for i in range(G.d):
                    e = Lk[i][j]
                    if e is not None:
                        term[i] = term[i] + xk[j] * e
        acc = term if acc is None else [a + b for a, b in zip(acc, term)]
        sizes.append(size)
        if kind == "log" and _diverging(sizes, M):
            raise ConvergenceError(f"log terms stop shrinking at τ^{k}; input is outside the radius of convergence")
        if _certified(sizes, M):
            return [a.truncate(M) for a in acc]
    raise ConvergenceError(f"{kind} series did not certify convergence within {k_max} terms")


def _diverging(sizes, M):
    """Last four term bounds not increasing and below M."""
    tail = sizes[-4:]
    if len(tail) < 4 or any(x is None for x in tail):
        return False
    return all(a >= b for a, b in zip(tail, tail[1:])) and tail[-1] < M


def _certified(sizes, M):
    """Last three term bounds strictly increasing with non-shrinking gaps, all ≥ M."""
    if len(sizes) < 3:
        return False
    a, b, c = sizes[-3:]
    if a is None and b is None and c is None:
        return True
    if a is None or b is None or c is None:
        return (c is None or c >= M) and (b is None or b >= M)
    return a < b < c and c - b >= b - a and b >= M and c >= M


def exp_eval(G, x, M, k_max=40):
    """Exp_G(x) modulo θ^{-M} for a Lie vector x over K_∞ or K_∞(η)."""
    return _evaluate(exp_series, G, x, M, k_max, "exp")


def log_eval(G, x, M, k_max=40):
    """Log_G(x) modulo θ^{-M}; refuses when the terms do not visibly shrink."""
    return _evaluate(log_series, G, x, M, k_max, "log")


# -- Anderson generating functions ----------------------------------------------


class AGFVector:
    """𝒢_w(t) = Σ_i Exp_G(dφ(t)^{-i-1} w) t^i as d Tate series."""

    def __init__(self, base, w, series, t_prec, exp_w, theta_prec):
        self.base = base
        self.theta_prec = theta_prec
        self.w = w
        self.series = series
        self.t_prec = t_prec
        self.exp_w = exp_w

    def coefficient(self, i):
        return [s[i] for s in self.series]


def _a0_inverse(G):
    """(θ·Id + N)^{-1} = Σ_j (-N)^j θ^{-j-1}, exact over K."""
    F, d = G.F, G.d
    theta_inv = RationalFn(APoly(F, (1,)), APoly.x(F), reduced=True)
    out = mx.zeros(F, d)
    P = mx.identity(F, d)
    negN = mx.neg(G.N)
    pw = theta_inv
    for _ in range(d):
        out = mx.add(out, mx.scale(P, pw))
        P = mx.mul(P, negN)
        pw = pw * theta_inv
        if mx.is_zero(P):
            break
    return out


def _guard(G):
    g = 1
    for A in G.coeffs:
        for row in A:
            for x in row:
                if not x.is_zero():
                    g = max(g, -x.valuation() + 1)
    return g


def agf(G, w, t_prec, M):
    """Anderson generating function to t-precision T and θ-precision about M."""
    F, d = G.F, G.d
    guard = _guard(G) + 2
    P = M + guard
    wv = [_to_series(F, c, P + 2 * (t_prec + 2)) for c in _as_vector(G, w)]
    Ainv = _a0_inverse(G)
    B = Ainv
    coeffs = []
    for i in range(t_prec + 1):
        xi = []
        for r in range(d):
            acc = None
            for c in range(d):
                e = B[r][c]
                if e.is_zero():
                    continue
                if isinstance(wv[c], LaurentSeries) and wv[c].is_exact_zero():
                    continue
                ev = LaurentSeries.from_rational(e, P + 2 * (t_prec + 2))
                term = wv[c] * ev
                acc = term if acc is None else acc + term
            xi.append(acc if acc is not None else LaurentSeries.zero(F))
        coeffs.append(exp_eval(G, xi, P))
        B = mx.mul(B, Ainv)
    exp_w = exp_eval(G, wv, P)
    series = [TateSeries([coeffs[i][r] for i in range(t_prec + 1)], t_prec) for r in range(d)]
    return AGFVector(G, wv, series, t_prec, exp_w, P)


def agf_residual(a):
    """φ(t)·𝒢_w - t𝒢_w - Exp_G(w) coefficientwise; each entry
    is a list of d values per t-power 0..T."""
    G = a.base
    F, d = G.F, G.d
    T = a.t_prec
    out = []
    for i in range(T + 1):
        g = a.coefficient(i)
        row = []
        for r in range(d):
            acc = None
            for j, A in enumerate(G.coeffs):
                for c in range(d):
                    e = A[r][c]
                    if e.is_zero():
                        continue
                    gc = g[c].twist(j)
                    P = _prec(gc)
                    if P is None:
                        P = a.theta_prec * F.q ** j
                    term = gc * LaurentSeries.from_rational(e, P + max(0, -e.valuation()) + 1)
                    acc = term if acc is None else acc + term
            acc = acc if acc is not None else LaurentSeries.zero(F)
            if i > 0:
                acc = acc - a.coefficient(i - 1)[r]
            else:
                acc = acc - a.exp_w[r]
            row.append(acc)
        out.append(row)
    return out


def residual_agreement(res):
    """Precision to which a residual (nested lists of values) is known to vanish."""
    best = None
    for row in res:
        for x in row:
            if not x.is_zero():
                v = x.valuation() if isinstance(x, KummerElem) else x.valuation
                return ("nonzero", v)
            p = x.prec
            if p is not None:
                best = p if best is None else min(best, p)
    return ("zero", best)


# -- quasi-periods ----------------------------------------------------------------


def period_certificate(phi, lam, M):
    """Valuation bound of Exp(λ): returns the precision to which it vanishes."""
    val = exp_eval(phi, [lam], M)[0]
    if not val.is_zero():
        return False, val
    return True, val


def quasi_periods(phi, lambdas, M, tolerance=None):
    """Period matrix rows [-λ_j, f_{λ_j}^{(1)}(θ), ..., f_{λ_j}^{(r-1)}(θ)].

    f_λ(t) = Σ_i exp(λ/θ^{i+1}) t^i is the generating function of λ.
    """
    if phi.d != 1 or not phi.rank:
        raise ValueError("quasi-periods are implemented for Drinfeld modules")
    F, q, r = phi.F, phi.F.q, phi.rank
    tol = M if tolerance is None else tolerance
    rows = []
    for lam in lambdas:
        ok, val = period_certificate(phi, lam, tol)
        if not ok:
            raise PeriodError(f"exp(λ) is not zero modulo θ^(-{tol}): {val}")
        row = [-lam]
        if r > 1:
            vl = _val(lam)
            # g_i ≈ λ θ^{-i-1}; choose T so that the twisted tail is below θ^{-M}
            T = 1
            while q * (vl + T + 2) - (T + 1) < M + 2:
                T += 1
            P = M + 4
            g = []
            theta_inv = LaurentSeries.monomial(F, -1)
            for i in range(T + 1):
                x = lam * theta_inv ** (i + 1)
                g.append(exp_eval(phi, [x], int(ceil(P + vl + i + 1)) + P)[0])
            vT = _val(g[-1])
            if vT is None or vT != vl + T + 1:
                raise ConvergenceError("generating function not in its linear regime")
            base = vl + 1

            def tail(i, base=base):
                return base + i

            f = TateSeries(g, T, tail_bound=tail)
            for k in range(1, r):
                row.append(eval_at_theta(f.twist(k)).truncate(M))
        rows.append(row)
    return rows


def determinant(rows):
    """Leibniz determinant of a small square matrix of ring elements."""
    from itertools import permutations
    n = len(rows)
    total = None
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = None
        for i in range(n):
            x = rows[i][perm[i]]
            prod = x if prod is None else prod * x
        if inv % 2:
            prod = -prod
        total = prod if total is None else total + prod
    return total

