"""Truncated Tate-algebra series Σ c_i t^i over K_∞ or K_∞(η).

A :class:`TateSeries` is known modulo t^(T+1); ``t_prec=None`` marks a
polynomial in t known exactly.  Coefficients are :class:`LaurentSeries` or
:class:`KummerElem` values, each with its own θ-precision.
"""

from fractions import Fraction

from .field import FiniteField, get_field, FieldSpec
from .laurent import KummerElem, LaurentSeries, PrecisionError


class DivergenceError(ArithmeticError):
    """Raised when a series evaluation cannot be certified to converge."""


def _min_t(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _zero_like(x):
    if isinstance(x, KummerElem):
        return KummerElem(x.F, [])
    return LaurentSeries.zero(x.F)


def _valuation(x):
    """Valuation as a Fraction; None for an exact zero."""
    if isinstance(x, KummerElem):
        if x.is_exact_zero():
            return None
        return x.valuation()
    if x.is_exact_zero():
        return None
    return Fraction(x.valuation)


def _coeff_prec(x):
    return x.prec


def binomial_mod_p(n, k, p):
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    res = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        num = den = 1
        for i in range(b):
            num = num * (a - i) % p
            den = den * (i + 1) % p
        res = res * num * pow(den, p - 2, p) % p
        n //= p
        k //= p
    return res


class TateSeries:
    """Truncated power series in t with K_∞ or Kummer coefficients.

    ``tail_bound`` (optional) maps i > T to a lower bound for the valuation
    of the i-th coefficient; it is used to certify evaluation at t = θ.
    """

    def __init__(self, coeffs, t_prec=None, tail_bound=None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a TateSeries needs at least one coefficient (use zero values)")
        if t_prec is not None:
            z = _zero_like(coeffs[0])
            coeffs = (coeffs + [z] * (t_prec + 1 - len(coeffs)))[:t_prec + 1]
        self.coeffs = coeffs
        self.t_prec = t_prec
        self.tail_bound = tail_bound

    @property
    def F(self):
        return self.coeffs[0].F

    @classmethod
    def poly_t(cls, coeffs):
        """An exact polynomial in t."""
        return cls(coeffs, None)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if i < len(self.coeffs):
            return self.coeffs[i]
        if self.t_prec is not None:
            raise PrecisionError(f"t^{i} coefficient is beyond t-precision {self.t_prec}")
        return _zero_like(self.coeffs[0])

    def _zero(self):
        return _zero_like(self.coeffs[0])

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, o):
        if isinstance(o, TateSeries):
            return o
        if isinstance(o, (LaurentSeries, KummerElem)):
            return TateSeries([o], None)
        if isinstance(o, int):
            return TateSeries([LaurentSeries.const(self.F, self.F.from_int(o))], None)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        T = _min_t(self.t_prec, o.t_prec)
        n = (T + 1) if T is not None else max(len(self), len(o))
        out = [self[i] + o[i] for i in range(n)]
        return TateSeries(out, T)

    __radd__ = __add__

    def __neg__(self):
        return TateSeries([-c for c in self.coeffs], self.t_prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        T = _min_t(self.t_prec, o.t_prec)
        n = (T + 1) if T is not None else len(self) + len(o) - 1
        out = []
        for k in range(n):
            acc = None
            for i in range(max(0, k - len(o) + 1), min(k, len(self) - 1) + 1):
                term = self.coeffs[i] * o.coeffs[k - i]
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else self._zero())
        tb = None
        if len(o) == 1 and o.t_prec is None and self.tail_bound is not None:
            v = _valuation(o.coeffs[0])
            if v is not None:
                base = self.tail_bound
                tb = lambda i, base=base, v=v: base(i) + v  # noqa: E731
        return TateSeries(out, T, tb)

    __rmul__ = __mul__

    def mul_t(self, k=1):
        """Multiply by t^k."""
        z = self._zero()
        T = None if self.t_prec is None else self.t_prec + k
        return TateSeries([z] * k + self.coeffs, T)

    def truncate_t(self, T):
        T = _min_t(self.t_prec, T)
        return TateSeries(self.coeffs[:T + 1], T, self.tail_bound)

    def truncate(self, prec):
        """Cap the θ-precision of every coefficient."""
        return TateSeries([c.truncate(prec) for c in self.coeffs], self.t_prec, self.tail_bound)

    def inverse(self):
        """1/f for f with invertible constant term."""
        if self.t_prec is None:
            raise PrecisionError("inverse of an exact polynomial needs a t-precision; truncate_t first")
        c0inv = self.coeffs[0].inverse()
        g = [c0inv]
        for k in range(1, self.t_prec + 1):
            acc = None
            for j in range(1, k + 1):
                term = self.coeffs[j] * g[k - j]
                acc = term if acc is None else acc + term
            g.append(-(acc * c0inv))
        return TateSeries(g, self.t_prec)

    # -- structure -----------------------------------------------------------
    def twist(self, j):
        """Coefficientwise Frobenius twist c_i ↦ c_i^(q^j)."""
        tb = None
        if self.tail_bound is not None:
            scale = Fraction(self.F.q) ** j
            base = self.tail_bound
            tb = lambda i, base=base, s=scale: base(i) * s  # noqa: E731
        return TateSeries([c.twist(j) for c in self.coeffs], self.t_prec, tb)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def min_prec(self):
        """Smallest θ-precision among the coefficients (None if all exact)."""
        p = None
        for c in self.coeffs:
            cp = c.prec
            if cp is not None:
                p = cp if p is None else min(p, cp)
        return p

    def agreement(self, other):
        """min over coefficients of the θ-agreement (None = exact equality)."""
        d = self - other
        best = None
        for c in d.coeffs:
            a = _agreement_zero(c)
            if a is not None:
                best = a if best is None else min(best, a)
        return best

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero() and (c.prec is None):
                continue
            lab = "" if i == 0 else ("·t" if i == 1 else f"·t^{i}")
            parts.append(f"[{c}]{lab}")
        tail = "" if self.t_prec is None else f" + O(t^{self.t_prec + 1})"
        return (" + ".join(parts) or "0") + tail

    def __repr__(self):
        return f"TateSeries({self})"

    def to_json(self):
        return {"t_precision": self.t_prec, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, F, obj):
        coeffs = []
        for c in obj["coeffs"]:
            coeffs.append(KummerElem.from_json(F, c) if isinstance(c, list) else LaurentSeries.from_json(F, c))
        return cls(coeffs, obj["t_precision"])


def _agreement_zero(c):
    if isinstance(c, KummerElem):
        best = None
        for f in c.comps:
            a = _agreement_zero(f)
            if a is not None:
                best = a if best is None else min(best, a)
        return best
    if not c.c:
        return c.prec
    return c.v


def twist(f, j):
    return f.twist(j)


def gauss_norm(f):
    """‖f‖ = max_i |c_i| over the known coefficients, as a power of q."""
    best = None
    for c in f.coeffs:
        if c.is_zero():
            continue
        n = c.norm()
        if best is None or best < n:
            best = n
    if best is None:
        raise PrecisionError("Gauss norm of a series indistinguishable from zero")
    return best


def eval_at_theta(f, info=False):
    """Evaluate Σ c_i θ^i.

    The output precision folds in the truncation: each term's own precision,
    and a lower bound for the omitted tail (from ``f.tail_bound`` when given,
    otherwise extrapolated from the last three terms, which must show a
    strictly increasing valuation).  With ``info=True`` returns
    ``(value, {"certified": bool, "tail": bound})``.
    """
    terms = []
    for i, c in enumerate(f.coeffs):
        terms.append(c.shift(i) if not c.is_exact_zero() else c)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    certified = True
    tail = None
    if f.t_prec is not None:
        T = f.t_prec
        if f.tail_bound is not None:
            # b(i) - i is assumed nondecreasing past T (true for the bounds supplied here)
            tail = f.tail_bound(T + 1) - (T + 1)
        else:
            certified = False
            vals = []
            for i in range(max(0, T - 2), T + 1):
                v = _valuation(f.coeffs[i])
                vals.append(None if v is None else v - i)
            if len(vals) < 3 or any(v is None for v in vals):
                known = [v for v in vals if v is not None]
                if not known:
                    tail = None
                else:
                    raise DivergenceError("cannot certify convergence: too few nonzero tail terms")
            else:
                if not (vals[0] < vals[1] < vals[2]):
                    raise DivergenceError("tail terms are not shrinking; evaluation refused")
                tail = vals[2] + (vals[2] - vals[1])
        if tail is not None:
            from math import ceil
            total = total.truncate(int(ceil(tail)))
    if info:
        return total, {"certified": certified, "tail": tail}
    return total


def hyperderivative(f, j):
    """∂_t^j f = Σ C(i, j) c_i t^(i-j), binomials reduced mod p."""
    if j < 0:
        raise ValueError("order must be >= 0")
    if j == 0:
        return f
    p = f.F.p
    out = []
    for i in range(j, len(f.coeffs)):
        b = binomial_mod_p(i, j, p)
        c = f.coeffs[i]
        out.append(c.scale_int(b))
    if not out:
        out = [_zero_like(f.coeffs[0])]
    T = None if f.t_prec is None else f.t_prec - j
    if T is not None and T < 0:
        raise PrecisionError("hyperderivative order exceeds t-precision")
    return TateSeries(out, T)


def _field(spec_or_field):
    if isinstance(spec_or_field, FiniteField):
        return spec_or_field
    if isinstance(spec_or_field, FieldSpec):
        return get_field(spec_or_field)
    if isinstance(spec_or_field, int):
        from .field import field_for_q
        return field_for_q(spec_or_field)
    raise TypeError("expected a FieldSpec, FiniteField or q")


class OmegaValue:
    """Truncated Ω with the number of product factors used."""

    def __init__(self, series, product_depth):
        self.series = series
        self.product_depth = product_depth

    def __repr__(self):
        return f"OmegaValue(depth={self.product_depth}, {self.series})"


def omega(spec, t_prec, theta_prec):
    """Ω = (-θ)^(-q/(q-1)) ∏_{i>=1} (1 - t/θ^(q^i)) modulo t^(T+1), θ^(-M).

    Here (-θ)^(-q/(q-1)) = η^(-q).  Factor i only touches θ-exponents >= q^i,
    so factors with q^i >= M are omitted without loss.
    """
    F = _field(spec)
    q = F.q
    T, M = t_prec, theta_prec
    if T < 0 or M < 1:
        raise ValueError("precisions must be positive")
    depth = 0
    while q ** (depth + 1) < M:
        depth += 1
    # product as a polynomial in t with exact Laurent coefficients
    P = [LaurentSeries.one(F)]
    minus_one = F.neg(F.one)
    for i in range(1, depth + 1):
        fac = LaurentSeries(F, q ** i, (minus_one,))  # -θ^(-q^i)
        new = list(P) + [LaurentSeries.zero(F)]
        for k in range(len(P) - 1, -1, -1):
            new[k + 1] = new[k + 1] + P[k] * fac
        P = new[:T + 1]
    lead = KummerElem.eta_power(F, -q)
    coeffs = []
    for k in range(T + 1):
        pk = P[k].truncate(M) if k < len(P) else LaurentSeries.zero(F, M)
        coeffs.append((lead * KummerElem.from_laurent(pk)).truncate(M))
    base = Fraction(q, q - 1)

    def tail(i):
        return base + Fraction(q ** (i + 1) - q, q - 1)

    return OmegaValue(TateSeries(coeffs, T, tail), depth)


def omega_residual(spec, t_prec, theta_prec):
    """twist(Ω, -1) - (t - θ)Ω with Ω computed at enough precision that the
    residual is known modulo θ^(-theta_prec); returns (residual, precision)."""
    F = _field(spec)
    inner = F.q * (theta_prec + 2)
    om = omega(F, t_prec, inner).series
    lhs = om.twist(-1)
    t_minus_theta = TateSeries.poly_t([KummerElem.from_laurent(LaurentSeries.monomial(F, 1, F.neg(F.one))),
                                       KummerElem.from_laurent(LaurentSeries.one(F))])
    rhs = (t_minus_theta * om).truncate_t(t_prec)
    res = (lhs - rhs).truncate(theta_prec)
    return res, res.min_prec()


def carlitz_period(spec, theta_prec):
    """π̃ = θ(-θ)^(1/(q-1)) ∏_{i>=1} (1 - θ^(1-q^i))^(-1) modulo θ^(-M)."""
    F = _field(spec)
    q = F.q
    M = theta_prec
    inner = M + 2  # θ·η costs two units of component precision at most
    prod = LaurentSeries.one(F)
    i = 1
    while q ** i - 1 < inner:
        fac = LaurentSeries(F, 0, [1] + [0] * (q ** i - 2) + [F.neg(F.one)])  # 1 - θ^(1-q^i)
        prod = (prod * fac.inverse(inner)).truncate(inner)
        i += 1
    val = KummerElem.eta(F) * KummerElem.from_laurent(prod.shift(1))
    return val.truncate(M)


def pi_tilde_from_omega(spec, theta_prec, t_prec=None):
    """-1/Ω(θ), computed independently of the product formula for π̃."""
    F = _field(spec)
    q = F.q
    M = theta_prec
    # Ω(θ) has valuation q/(q-1); its inverse loses about twice that
    T = t_prec if t_prec is not None else 4
    while (q ** (T + 2) - q) // (q - 1) - T < M + 4:
        T += 1
    inner = M + T + 6
    om = omega(F, T, inner).series
    val = eval_at_theta(om)
    return (-val.inverse()).truncate(M)
