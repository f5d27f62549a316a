"""Elements of K_∞ = F_q((1/θ)) and of the Kummer extension K_∞(η), η^(q-1) = -θ.

A :class:`LaurentSeries` stores coefficients c_0, c_1, ... of
θ^(-v), θ^(-v-1), ... together with an absolute precision M: the element is
known modulo θ^(-M).  ``prec=None`` marks an exact element (a finite sum).
Precision propagates pessimistically through every operation.
"""

from dataclasses import dataclass
from fractions import Fraction

from ._kernels import K
from .poly import APoly, RationalFn


class PrecisionError(ArithmeticError):
    """Raised when an operation needs information beyond the known precision."""


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_prec(p, k):
    return None if p is None else p + k


@dataclass(frozen=True, order=False)
class QPower:
    """The real number q^e with a rational exponent e."""

    q: int
    e: Fraction

    def __mul__(self, other):
        return QPower(self.q, self.e + other.e)

    def __lt__(self, other):
        return self.e < other.e

    def __le__(self, other):
        return self.e <= other.e

    def __float__(self):
        return float(self.q) ** float(self.e)

    @property
    def value(self):
        """Exact value when the exponent is an integer."""
        if self.e.denominator != 1:
            raise ValueError("irrational value; use the exponent")
        return Fraction(self.q) ** int(self.e)

    def __str__(self):
        return f"{self.q}^({self.e})"


class LaurentSeries:
    """Precision-tracked element of F_q((1/θ))."""

    __slots__ = ("F", "v", "c", "prec")

    def __init__(self, F, v, coeffs, prec=None):
        c = list(coeffs)
        if prec is not None:
            if len(c) > prec - v:
                c = c[:max(0, prec - v)]
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        c = c[i:]
        v += i
        if prec is None:
            while c and c[-1] == 0:
                c.pop()
            if not c:
                v = 0
        else:
            if not c:
                v = prec
            else:
                c = c + [0] * (prec - v - len(c))
        self.F, self.v, self.c, self.prec = F, v, tuple(c), prec

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, F, prec=None):
        return cls(F, 0 if prec is None else prec, (), prec)

    @classmethod
    def one(cls, F):
        return cls(F, 0, (1,))

    @classmethod
    def const(cls, F, a):
        return cls(F, 0, (a,))

    @classmethod
    def monomial(cls, F, k, a=1):
        """a·θ^k, exact."""
        return cls(F, -k, (a,))

    @classmethod
    def from_poly(cls, a):
        if a.is_zero():
            return cls.zero(a.F)
        return cls(a.F, -a.degree, a.c[::-1])

    @classmethod
    def from_rational(cls, r, prec):
        """Expansion of r ∈ K known modulo θ^(-prec)."""
        num = cls.from_poly(r.num)
        if r.den.is_one():
            return num.truncate(prec)
        inv = cls.from_poly(r.den).inverse(prec + max(r.num.degree, 0))
        return (num * inv).truncate(prec)

    def scalar(self, a):
        return LaurentSeries(self.F, 0, (a,))

    # -- queries -------------------------------------------------------------
    @property
    def q(self):
        return self.F.q

    def is_exact(self):
        return self.prec is None

    def is_zero(self):
        """True when no nonzero coefficient is known (exact zero or zero to precision)."""
        return not self.c

    def is_exact_zero(self):
        return self.prec is None and not self.c

    @property
    def valuation(self):
        if not self.c:
            if self.prec is None:
                raise ValueError("valuation of exact zero")
            return self.prec
        return self.v

    def lead(self):
        return self.c[0] if self.c else 0

    def coeff(self, e):
        """Coefficient of θ^(-e)."""
        if self.prec is not None and e >= self.prec:
            raise PrecisionError(f"coefficient of θ^(-{e}) is beyond precision {self.prec}")
        i = e - self.v
        if 0 <= i < len(self.c):
            return self.c[i]
        return 0

    def norm(self):
        """|x| = q^(-v) as an exact power of q."""
        if not self.c:
            raise PrecisionError("norm of an element indistinguishable from zero")
        return QPower(self.F.q, Fraction(-self.v))

    def is_one_unit(self):
        return bool(self.c) and self.v == 0 and self.c[0] == 1

    def truncate(self, prec):
        if prec is None:
            return self
        p = _min_prec(self.prec, prec)
        if p == self.prec:
            return self
        return LaurentSeries(self.F, self.v, self.c, p)

    def polynomial_part(self):
        """Sum of the terms with nonnegative powers of θ, as an APoly."""
        if not self.c or self.v > 0:
            return APoly(self.F, ())
        n = -self.v + 1
        if self.prec is not None and self.prec < 1:
            raise PrecisionError("polynomial part not determined at this precision")
        coeffs = [self.coeff(-k) for k in range(n)]
        return APoly(self.F, coeffs)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, o):
        if isinstance(o, LaurentSeries):
            return o
        if isinstance(o, int):
            return LaurentSeries(self.F, 0, (self.F.from_int(o),))
        if isinstance(o, APoly):
            return LaurentSeries.from_poly(o)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._addsub(o, False)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._addsub(o, True)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._addsub(self, True)

    def _addsub(self, o, subtract):
        F = self.F
        if o.is_exact_zero():
            return self
        if self.is_exact_zero():
            return -o if subtract else o
        P = _min_prec(self.prec, o.prec)
        v = min(self.v, o.v)
        if P is not None and v >= P:
            return LaurentSeries.zero(F, P)
        end = max(self.v + len(self.c), o.v + len(o.c))
        if P is not None:
            end = P
        out = [0] * (end - v)
        for i, a in enumerate(self.c):
            k = self.v + i - v
            if k < len(out):
                out[k] = a
        tab = F.sub_t if subtract else F.add_t
        qq = F.q
        for i, b in enumerate(o.c):
            k = o.v + i - v
            if k < len(out) and b:
                out[k] = tab[out[k] * qq + b]
        return LaurentSeries(F, v, out, P)

    def __neg__(self):
        return LaurentSeries(self.F, self.v, [self.F.neg(a) for a in self.c], self.prec)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.F
        if self.is_exact_zero() or o.is_exact_zero():
            return LaurentSeries.zero(F)
        va, vb = self.valuation, o.valuation
        P = _min_prec(_add_prec(self.prec, vb), _add_prec(o.prec, va))
        v = va + vb
        if not self.c or not o.c:
            return LaurentSeries.zero(F, P)
        if P is None:
            n = len(self.c) + len(o.c) - 1
        else:
            n = P - v
            if n <= 0:
                return LaurentSeries.zero(F, P)
        if len(self.c) == 1:
            return LaurentSeries(F, v, K.poly_scale(F.ctx, list(o.c[:n]), self.c[0]), P)
        if len(o.c) == 1:
            return LaurentSeries(F, v, K.poly_scale(F.ctx, list(self.c[:n]), o.c[0]), P)
        return LaurentSeries(F, v, K.series_mul(F.ctx, list(self.c), list(o.c), n), P)

    __rmul__ = __mul__

    def scale(self, a):
        if a == 0:
            return LaurentSeries.zero(self.F) if self.prec is None else LaurentSeries.zero(self.F, self.prec)
        return LaurentSeries(self.F, self.v, K.poly_scale(self.F.ctx, list(self.c), a), self.prec)

    def scale_int(self, k):
        return self.scale(self.F.from_int(k))

    def shift(self, k):
        """Multiply by θ^k exactly."""
        return LaurentSeries(self.F, self.v - k, self.c, _add_prec(self.prec, -k))

    def inverse(self, prec=None):
        """1/x.  For exact non-monomial input the target precision is required."""
        if not self.c:
            raise PrecisionError("inverting an element indistinguishable from zero")
        F = self.F
        v_out = -self.v
        if self.prec is None and len(self.c) == 1:
            return LaurentSeries(F, v_out, (F.inv(self.c[0]),))
        if self.prec is None:
            if prec is None:
                raise PrecisionError("target precision needed to invert an exact series")
            P = prec
        else:
            P = self.prec - 2 * self.v
            if prec is not None:
                P = min(P, prec)
        n = P - v_out
        if n <= 0:
            return LaurentSeries.zero(F, P)
        return LaurentSeries(F, v_out, K.series_inv(F.ctx, list(self.c), n), P)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse(_quot_prec(self, o))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentSeries.one(self.F)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def power(self, e, prec=None):
        """x^e for any integer e; prec caps the result (needed for exact inverses)."""
        if e >= 0:
            return (self ** e).truncate(prec)
        n = -e
        # y^n loses (n-1)·v(y) of precision, so invert to prec + (n-1)·v(x)
        target = None if prec is None else prec + (n - 1) * self.valuation
        return (self.inverse(target) ** n).truncate(prec)

    def twist(self, j):
        """Frobenius twist x ↦ x^(q^j), i.e. θ ↦ θ^(q^j)."""
        if j == 0:
            return self
        step = self.F.q ** abs(j)
        if j > 0:
            if not self.c:
                return LaurentSeries(self.F, self.v * step, (), _mul_prec(self.prec, step))
            out = [0] * ((len(self.c) - 1) * step + 1)
            for i, a in enumerate(self.c):
                out[i * step] = a
            return LaurentSeries(self.F, self.v * step, out, _mul_prec(self.prec, step))
        # negative twist: every exponent with a nonzero coefficient must be divisible by step
        for i, a in enumerate(self.c):
            if a and (self.v + i) % step:
                raise ValueError(f"negative twist of a series that is not a q^{-j}-th power")
        P = None if self.prec is None else -((-self.prec) // step)
        if not self.c:
            return LaurentSeries.zero(self.F, P)
        v0 = self.v // step if self.v % step == 0 else self.v // step + 1
        out = []
        e = v0
        while True:
            k = e * step - self.v
            if k >= len(self.c):
                break
            out.append(self.c[k] if k >= 0 else 0)
            e += 1
        return LaurentSeries(self.F, v0, out, P)

    # -- comparison ----------------------------------------------------------
    def agreement(self, other):
        """Largest M such that self and other are known to agree modulo θ^(-M)."""
        d = self - self._coerce(other)
        if not d.c:
            return d.prec  # None means exactly equal
        return d.v

    def agrees_to(self, other, M):
        a = self.agreement(other)
        return a is None or a >= M

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o.v and self.c == o.c and self.prec == o.prec

    def __hash__(self):
        return hash((self.v, self.c, self.prec))

    # -- display / serialization ---------------------------------------------
    def terms(self):
        """(exponent k, coefficient) pairs for the nonzero terms c·θ^(-k)."""
        return [(self.v + i, a) for i, a in enumerate(self.c) if a]

    def __str__(self):
        parts = []
        for k, a in self.terms():
            cs = APoly(self.F, (a,))._coef_str(a)
            if k == 0:
                parts.append(cs)
            else:
                mon = f"θ^{-k}" if k != -1 else "θ"
                parts.append(mon if a == 1 else f"{cs}·{mon}")
        body = " + ".join(parts) if parts else "0"
        if self.prec is not None:
            body += f" + O(θ^{-self.prec})"
        return body

    def __repr__(self):
        return f"LaurentSeries({self})"

    def to_json(self):
        return {"valuation": self.v, "coeffs": [self.F.to_coords(a) for a in self.c],
                "precision": self.prec}

    @classmethod
    def from_json(cls, F, obj):
        coeffs = [F.from_coords(c) if isinstance(c, list) else F.from_int(c) for c in obj["coeffs"]]
        return cls(F, int(obj["valuation"]), coeffs, obj.get("precision"))


def _mul_prec(p, k):
    return None if p is None else p * k


def _quot_prec(a, b):
    """Target precision for 1/b when computing a/b."""
    if b.prec is None and len(b.c) > 1:
        if a.prec is None:
            raise PrecisionError("exact quotient of exact series needs an explicit precision")
        return a.prec - a.valuation - b.v
    return None


# --------------------------------------------------------------------------
# Kummer extension K_∞(η), η^(q-1) = -θ
# --------------------------------------------------------------------------

class KummerElem:
    """Σ_k f_k η^k with f_k ∈ K_∞ and η^(q-1) = -θ."""

    __slots__ = ("F", "comps")

    def __init__(self, F, comps):
        n = F.q - 1
        comps = list(comps)
        if len(comps) > n:
            raise ValueError("too many components")
        comps += [LaurentSeries.zero(F)] * (n - len(comps))
        self.F = F
        self.comps = tuple(comps)

    @classmethod
    def from_laurent(cls, x):
        return cls(x.F, [x])

    @classmethod
    def eta_power(cls, F, k):
        """η^k for any integer k, exact."""
        n = F.q - 1
        a, b = divmod(k, n)  # η^k = (-θ)^a η^b
        sign = F.one if a % 2 == 0 else F.neg(F.one)
        coeff = LaurentSeries(F, -a, (sign,))
        comps = [LaurentSeries.zero(F)] * n
        comps[b] = coeff
        return cls(F, comps)

    @classmethod
    def eta(cls, F):
        return cls.eta_power(F, 1)

    def scalar(self, a):
        return KummerElem(self.F, [LaurentSeries.const(self.F, a)])

    @property
    def n(self):
        return self.F.q - 1

    def _coerce(self, o):
        if isinstance(o, KummerElem):
            return o
        if isinstance(o, LaurentSeries):
            return KummerElem.from_laurent(o)
        if isinstance(o, (int, APoly)):
            return KummerElem.from_laurent(LaurentSeries.const(self.F, self.F.from_int(o))
                                           if isinstance(o, int) else LaurentSeries.from_poly(o))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KummerElem(self.F, [a + b for a, b in zip(self.comps, o.comps)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KummerElem(self.F, [a - b for a, b in zip(self.comps, o.comps)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return KummerElem(self.F, [-a for a in self.comps])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.n
        F = self.F
        minus_one = F.neg(F.one)
        acc = [None] * n
        for i, a in enumerate(self.comps):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(o.comps):
                if b.is_exact_zero():
                    continue
                prod = a * b
                k = i + j
                if k >= n:
                    k -= n
                    prod = prod.shift(1).scale(minus_one)
                acc[k] = prod if acc[k] is None else acc[k] + prod
        return KummerElem(F, [x if x is not None else LaurentSeries.zero(F) for x in acc])

    __rmul__ = __mul__

    def scale(self, a):
        return KummerElem(self.F, [c.scale(a) for c in self.comps])

    def scale_int(self, k):
        return self.scale(self.F.from_int(k))

    def shift(self, k):
        return KummerElem(self.F, [c.shift(k) for c in self.comps])

    def truncate(self, prec):
        return KummerElem(self.F, [c.truncate(prec) for c in self.comps])

    # -- valuations ----------------------------------------------------------
    def valuation(self):
        """min_k (v(f_k) - k/(q-1)) as a Fraction; components never cancel."""
        best = None
        for k, f in enumerate(self.comps):
            if f.is_exact_zero():
                continue
            if not f.c:
                val = Fraction(f.prec) - Fraction(k, self.n)
            else:
                val = Fraction(f.v) - Fraction(k, self.n)
            if best is None or val < best:
                best = val
        if best is None:
            raise ValueError("valuation of exact zero")
        return best

    def is_zero(self):
        return all(not f.c for f in self.comps)

    def is_exact_zero(self):
        return all(f.is_exact_zero() for f in self.comps)

    def norm(self):
        if self.is_zero():
            raise PrecisionError("norm of an element indistinguishable from zero")
        return QPower(self.F.q, -self.valuation())

    @property
    def prec(self):
        """Smallest component precision (None when exact)."""
        p = None
        for f in self.comps:
            p = _min_prec(p, f.prec)
        return p

    def _leading(self):
        best = None
        for k, f in enumerate(self.comps):
            if f.c:
                val = Fraction(f.v) - Fraction(k, self.n)
                if best is None or val < best[0]:
                    best = (val, k, f.v, f.c[0])
        if best is None:
            raise PrecisionError("element indistinguishable from zero")
        return best

    def inverse(self):
        """Inverse via the leading monomial and a geometric series."""
        F = self.F
        _, k, j, c = self._leading()
        # m = c θ^(-j) η^k; m^(-1) = c^(-1) θ^j η^(-k)
        minv = KummerElem.eta_power(F, -k) * LaurentSeries(F, -j, (F.inv(c),))
        eps = self * minv - 1  # positive valuation
        rel = self._relative_precision(j, k)
        if rel is None:
            if eps.is_exact_zero():
                return minv
            raise PrecisionError("exact Kummer element with infinite inverse expansion; truncate first")
        total = KummerElem.from_laurent(LaurentSeries.one(F))
        term = total
        neg_eps = -eps
        while True:
            term = (term * neg_eps).truncate(rel)
            if term.is_zero():
                break
            total = total + term
        total = total.truncate(rel)
        return total * minv

    def _relative_precision(self, j, k):
        # x·m^(-1) component i carries precision shifted by the leading valuation
        p = None
        for i, f in enumerate(self.comps):
            if f.prec is None:
                continue
            shift = f.prec - j
            if i < k:
                shift += 1  # η^(i-k) = η^(i-k+n)/(-θ)
            p = _min_prec(p, shift)
        return p

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = KummerElem.from_laurent(LaurentSeries.one(self.F))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def power(self, e):
        return self ** e

    def project_to_kinf(self):
        """The K_∞-component, provided every η-component vanishes to precision."""
        for k in range(1, self.n):
            if self.comps[k].c:
                raise ValueError("element has genuine η-content; it does not lie in K_∞")
        return self.comps[0]

    def twist(self, j):
        """Frobenius twist by q^j; η^(q^j) = η·(-θ)^((q^j - 1)/(q - 1))."""
        if j == 0:
            return self
        F = self.F
        qj = F.q ** abs(j)
        e = (qj - 1) // (F.q - 1)
        out = []
        for k, f in enumerate(self.comps):
            if f.is_exact_zero():
                out.append(f)
                continue
            fac = _minus_theta_power(F, k * e)
            if j > 0:
                out.append(f.twist(j) * fac)
            else:
                out.append((f * _minus_theta_power(F, -k * e)).twist(j))
        return KummerElem(F, out)

    def agreement(self, other):
        o = self._coerce(other)
        best = None
        for a, b in zip(self.comps, o.comps):
            best = _min_prec(best, a.agreement(b))
        return best

    def agrees_to(self, other, M):
        a = self.agreement(other)
        return a is None or a >= M

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.comps == o.comps

    def __hash__(self):
        return hash(self.comps)

    def __str__(self):
        parts = []
        for k, f in enumerate(self.comps):
            if f.is_exact_zero():
                continue
            lab = "" if k == 0 else ("·η" if k == 1 else f"·η^{k}")
            parts.append(f"({f}){lab}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"KummerElem({self})"

    def to_json(self):
        return [f.to_json() for f in self.comps]

    @classmethod
    def from_json(cls, F, arr):
        return cls(F, [LaurentSeries.from_json(F, x) for x in arr])


def _minus_theta_power(F, k):
    """(-θ)^k exactly (k may be negative)."""
    sign = F.one if k % 2 == 0 else F.neg(F.one)
    return LaurentSeries(F, -k, (sign,))


# --------------------------------------------------------------------------
# rational reconstruction
# --------------------------------------------------------------------------

class Reconstruction:
    """Outcome of :func:`rational_reconstruct`."""

    def __init__(self, value, residual_valuation):
        self.value = value
        self.residual_valuation = residual_valuation

    @property
    def ok(self):
        return self.value is not None

    def __repr__(self):
        if self.ok:
            return f"Reconstruction({self.value})"
        return f"Reconstruction(failed, residual valuation {self.residual_valuation})"


def rational_reconstruct(s, dmax):
    """Find N/D with deg N, deg D <= dmax whose expansion equals s to its precision.

    The least-degree monic D with D·s polynomial (to precision) is found by
    F_q-linear algebra on the negative-power coefficients.
    """
    F = s.F
    if s.prec is None:
        if not s.c:
            return Reconstruction(RationalFn(APoly(F, ())), None)
        k = s.v + len(s.c) - 1
        num = APoly(F, [s.coeff(k - i) if s.v <= k - i else 0 for i in range(k - s.v + 1)] if k >= 0 else ())
        if k < 0:
            num = APoly(F, [s.coeff(-i) for i in range(-s.v + 1)])
            return Reconstruction(RationalFn(num), None)
        coeffs = [0] * (k - s.v + 1)
        for e, a in s.terms():
            coeffs[k - e] = a
        val = RationalFn(APoly(F, coeffs), APoly.monomial(F, k))
        ok = val.num.degree <= dmax and val.den.degree <= dmax
        return Reconstruction(val if ok else None, None)
    M = s.prec
    if M < 2 * dmax + 2:
        raise PrecisionError(f"precision {M} is below 2*dmax+2 = {2 * dmax + 2}")
    ctx = F.ctx
    best_resid = 1
    for delta in range(dmax + 1):
        rows = []
        # coefficient of θ^(-e) in D·s for e = 1 .. M-delta-1:
        #   Σ_{i<delta} d_i s_{e+i} + s_{e+delta} = 0
        for e in range(1, M - delta):
            row = [s.coeff(e + i) for i in range(delta)]
            row.append(F.neg(s.coeff(e + delta)))
            rows.append(row)
        sol = _solve_affine(ctx, F, rows, delta)
        if sol is None:
            if delta == dmax:
                best_resid = 1 + _solvable_prefix(ctx, F, rows, delta)
            continue
        D = APoly(F, list(sol) + [1])
        prod = s * LaurentSeries.from_poly(D)
        N = prod.polynomial_part()
        if N.degree > dmax:
            continue
        return Reconstruction(RationalFn(N, D), None)
    return Reconstruction(None, best_resid)


def _solve_affine(ctx, F, rows, n):
    """Solve rows·(x, -1)... i.e. Σ row[i] x_i = row[n]; None if inconsistent."""
    if n == 0:
        return [] if all(r[0] == 0 for r in rows) else None
    red, piv = K.rref(ctx, rows, n + 1)
    if n in piv:
        return None
    x = [0] * n
    for i, c in enumerate(piv):
        x[c] = red[i][n]
    return x


def _solvable_prefix(ctx, F, rows, n):
    lo, hi = 0, len(rows)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _solve_affine(ctx, F, rows[:mid], n) is not None:
            lo = mid
        else:
            hi = mid - 1
    return lo
