"""Polynomials over F_q and rational functions.

:class:`APoly` serves both for A = F_q[θ] and for F_q[t]; the variable
name is only a display label and is ignored by equality.
"""

from ._kernels import K
from .field import FiniteField

ZERO_DEGREE = -1  # degree reported for the zero polynomial


def _norm(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class APoly:
    """Immutable polynomial with F_q coefficients, lowest degree first."""

    __slots__ = ("F", "c", "var", "_hash")

    def __init__(self, F, coeffs=(), var="θ"):
        self.F = F
        self.c = _norm(coeffs)
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, F, c, var):
        obj = cls.__new__(cls)
        obj.F, obj.c, obj.var, obj._hash = F, tuple(c), var, None
        return obj

    @classmethod
    def const(cls, F, a, var="θ"):
        return cls(F, (a,), var)

    @classmethod
    def x(cls, F, var="θ"):
        return cls._raw(F, (0, 1), var)

    @classmethod
    def monomial(cls, F, n, a=1, var="θ"):
        return cls(F, (0,) * n + (a,), var)

    # -- basic data ----------------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1

    def lead(self):
        return self.c[-1] if self.c else 0

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == (1,)

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def is_constant(self):
        return len(self.c) <= 1

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __len__(self):
        return len(self.c)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = APoly(self.F, (self.F.from_int(other),))
        if not isinstance(other, APoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def _coerce(self, other):
        if isinstance(other, APoly):
            return other
        if isinstance(other, int):
            return APoly(self.F, (self.F.from_int(other),), self.var)
        return None

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return APoly._raw(self.F, K.poly_add(self.F.ctx, list(self.c), list(o.c)), self.var)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return APoly._raw(self.F, K.poly_sub(self.F.ctx, list(self.c), list(o.c)), self.var)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return APoly._raw(self.F, [self.F.neg(a) for a in self.c], self.var)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return APoly._raw(self.F, K.poly_mul(self.F.ctx, list(self.c), list(o.c)), self.var)

    __rmul__ = __mul__

    def scale(self, a):
        return APoly._raw(self.F, K.poly_scale(self.F.ctx, list(self.c), a), self.var)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = APoly._raw(self.F, (1,), self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        qq, r = K.poly_divmod(self.F.ctx, list(self.c), list(o.c))
        return APoly._raw(self.F, qq, self.var), APoly._raw(self.F, r, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        return APoly._raw(self.F, K.poly_rem(self.F.ctx, list(self.c), list(o.c)), self.var)

    def exact_div(self, other):
        qq, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return qq

    def divides(self, other):
        return (other % self).is_zero()

    def monic(self):
        if not self.c:
            return self
        return self.scale(self.F.inv(self.c[-1]))

    def gcd(self, other):
        return APoly._raw(self.F, K.poly_gcd(self.F.ctx, list(self.c), list(other.c)), self.var)

    def xgcd(self, other):
        g, s, t = K.poly_xgcd(self.F.ctx, list(self.c), list(other.c))
        mk = lambda v: APoly._raw(self.F, v, self.var)  # noqa: E731
        return mk(g), mk(s), mk(t)

    def inverse_mod(self, m):
        g, s, _ = self.xgcd(m)
        if not g.is_one():
            raise ZeroDivisionError("not invertible modulo the given polynomial")
        return s % m

    def powmod(self, e, m):
        return APoly._raw(self.F, K.poly_powmod(self.F.ctx, list(self.c), e, list(m.c)), self.var)

    # -- evaluation and substitution -----------------------------------------
    def __call__(self, x):
        """Horner evaluation at an F_q element (int) or any ring element."""
        if isinstance(x, int):
            F = self.F
            acc = 0
            for a in reversed(self.c):
                acc = F.add(F.mul(acc, x), a)
            return acc
        acc = None
        for a in reversed(self.c):
            acc = x.scalar(a) if acc is None else acc * x + x.scalar(a)
        if acc is None:
            return x.scalar(0)
        return acc

    def substitute(self, var="t"):
        """Relabel the variable, e.g. θ ↦ t."""
        return APoly._raw(self.F, self.c, var)

    def frobenius_twist(self, j):
        """a(θ^(q^j)) = a^(q^j) for j >= 0."""
        if j < 0:
            step = self.F.q ** (-j)
            if any(a and i % step for i, a in enumerate(self.c)):
                raise ValueError("negative twist of a polynomial that is not a q-power")
            return APoly._raw(self.F, self.c[::step], self.var)
        step = self.F.q ** j
        if step == 1 or not self.c:
            return self
        out = [0] * ((len(self.c) - 1) * step + 1)
        for i, a in enumerate(self.c):
            out[i * step] = a
        return APoly._raw(self.F, out, self.var)

    def compose(self, other):
        """self(other) for another polynomial."""
        acc = APoly(self.F, (), other.var)
        for a in reversed(self.c):
            acc = acc * other + a
        return acc

    def derivative(self):
        F = self.F
        return APoly(F, [F.mul(F.from_int(i), a) for i, a in enumerate(self.c)][1:], self.var)

    def is_irreducible(self):
        if self.degree < 1:
            return False
        return K.is_irreducible(self.F.ctx, list(self.monic().c))

    # -- display -------------------------------------------------------------
    def _coef_str(self, a):
        F = self.F
        if F.m == 1:
            return str(a)
        digits = F.to_coords(a)
        terms = []
        for i, d in enumerate(digits):
            if d:
                terms.append(str(d) if i == 0 else (f"{d}g^{i}" if d != 1 else f"g^{i}"))
        return "(" + "+".join(terms) + ")" if len(terms) > 1 else terms[0]

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            cs = self._coef_str(a)
            if i == 0:
                parts.append(cs)
            else:
                mon = self.var if i == 1 else f"{self.var}^{i}"
                parts.append(mon if a == 1 else f"{cs}{mon}")
        return " + ".join(parts)

    def __repr__(self):
        return f"APoly({self})"

    def to_json(self):
        return [self.F.to_coords(a) for a in self.c]

    @classmethod
    def from_json(cls, F, arr, var="θ"):
        coeffs = []
        for item in arr:
            if isinstance(item, int):
                coeffs.append(F.from_int(item) if F.m == 1 else F.from_coords([item] + [0] * (F.m - 1)))
            else:
                coeffs.append(F.from_coords(item))
        return cls(F, coeffs, var)


def theta(F):
    return APoly.x(F, "θ")


def tvar(F):
    return APoly.x(F, "t")


class RationalFn:
    """Element num/den of K = F_q(θ) in lowest terms with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduced=False):
        if isinstance(num, int):
            raise TypeError("use RationalFn.const for integers")
        if den is None:
            den = APoly._raw(num.F, (1,), num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if num.is_zero():
                den = APoly._raw(num.F, (1,), num.var)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num // g, den // g
            lc = den.lead()
            if lc != 1:
                inv = num.F.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def F(self):
        return self.num.F

    @classmethod
    def const(cls, F, a, var="θ"):
        return cls(APoly(F, (a,), var), reduced=True)

    @classmethod
    def from_poly(cls, a):
        return cls(a, reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_integral(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def _coerce(self, o):
        if isinstance(o, RationalFn):
            return o
        if isinstance(o, APoly):
            return RationalFn(o, reduced=True)
        if isinstance(o, int):
            return RationalFn.const(self.F, self.F.from_int(o), self.num.var)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        if g.is_one():
            return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den, reduced=True)
        d1 = self.den // g
        num = self.num * (o.den // g) + o.num * d1
        return RationalFn(num, d1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, reduced=True)

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
        if self.num.is_zero() or o.num.is_zero():
            return RationalFn(APoly(self.F, (), self.num.var), reduced=False)
        if self.den.is_one() and o.den.is_one():
            return RationalFn(self.num * o.num, self.den, reduced=True)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n1, d2 = (self.num // g1, o.den // g1) if not g1.is_one() else (self.num, o.den)
        n2, d1 = (o.num // g2, self.den // g2) if not g2.is_one() else (o.num, self.den)
        num, den = n1 * n2, d1 * d2
        lc = den.lead()
        if lc != 1:
            inv = self.F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return RationalFn(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in K")
        return RationalFn(self.den, self.num, reduced=False)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFn(self.num ** e, self.den ** e, reduced=True)

    def scale(self, a):
        return RationalFn(self.num.scale(a), self.den, reduced=True) if a else RationalFn(
            APoly(self.F, (), self.num.var))

    def frobenius_twist(self, j):
        """Apply θ ↦ θ^(q^j) (the q^j-power map on K)."""
        if j == 0:
            return self
        return RationalFn(self.num.frobenius_twist(j), self.den.frobenius_twist(j), reduced=True)

    def valuation(self):
        """Valuation at infinity: deg den - deg num."""
        if self.num.is_zero():
            raise ValueError("valuation of zero")
        return self.den.degree - self.num.degree

    def reduce_mod(self, beta):
        """Image in A/βA as a polynomial of degree < deg β."""
        if self.den.is_one():
            return self.num % beta
        inv = (self.den % beta).inverse_mod(beta)
        return (self.num * inv) % beta

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if len(self.num) > 1 and sum(1 for a in self.num.c if a) > 1:
            n = f"({n})"
        return f"{n}/({d})" if sum(1 for a in self.den.c if a) > 1 else f"{n}/{d}"

    def __repr__(self):
        return f"RationalFn({self})"

    def to_json(self):
        if self.den.is_one():
            return self.num.to_json()
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, F, obj, var="θ"):
        if isinstance(obj, dict):
            return cls(APoly.from_json(F, obj["num"], var), APoly.from_json(F, obj["den"], var))
        return cls(APoly.from_json(F, obj, var), reduced=True)


def as_rational(F, x):
    """Coerce an int, APoly or RationalFn into K."""
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, APoly):
        return RationalFn(x, reduced=True)
    if isinstance(x, int):
        return RationalFn.const(F, F.from_int(x))
    raise TypeError(f"cannot coerce {type(x).__name__} into K")


def monic_irreducibles(F, d, var="θ"):
    """Monic irreducibles of degree d, ordered by their coefficient vectors
    read from the top coefficient down (equivalently, by base-q encoding)."""
    if isinstance(F, FiniteField):
        field = F
    else:
        from .field import get_field
        field = get_field(F)
    if d < 1:
        raise ValueError("degree must be >= 1")
    return [APoly._raw(field, f, var) for f in _irreducibles_cached(field, d)]


_IRR_CACHE = {}


def _irreducibles_cached(F, d):
    key = (F.spec, d)
    if key not in _IRR_CACHE:
        _IRR_CACHE[key] = [tuple(f) for f in K.irreducible_monics(F.ctx, d)]
    return _IRR_CACHE[key]


def primes_up_to(F, D, var="θ"):
    """All monic irreducibles of degree 1..D in the deterministic order."""
    out = []
    for d in range(1, D + 1):
        out.extend(monic_irreducibles(F, d, var))
    return out


def necklace_count(q, d):
    """Number of monic irreducibles of degree d over F_q."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius(e) * q ** (d // e)
    return total // d


def _mobius(n):
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def monics(F, d, var="θ"):
    """All monic polynomials of degree d (base-q order)."""
    q = F.q
    for code in range(q ** d):
        c = []
        for _ in range(d):
            c.append(code % q)
            code //= q
        yield APoly._raw(F, c + [1], var)
