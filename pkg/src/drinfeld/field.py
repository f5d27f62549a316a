"""Finite fields F_q = F_p[g]/(modulus).

Elements of F_q are plain ints in ``range(q)``; the base-p digits of an int
are its coordinates in the basis 1, g, ..., g^{m-1}.  A :class:`FiniteField`
carries the lookup tables and a kernel context used by every polynomial
routine in the package.
"""

from functools import lru_cache

from ._kernels import K

# Conway polynomials, coefficients lowest degree first.
CONWAY = {
    (2, 1): (1, 1), (2, 2): (1, 1, 1), (2, 3): (1, 1, 0, 1), (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1), (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1), (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 1): (1, 1), (3, 2): (2, 2, 1), (3, 3): (1, 2, 0, 1), (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1), (5, 2): (2, 4, 1), (5, 3): (3, 3, 0, 1),
    (7, 1): (4, 1), (7, 2): (3, 6, 1), (7, 3): (4, 0, 6, 1),
    (11, 1): (9, 1), (11, 2): (2, 7, 1), (13, 1): (11, 1), (13, 2): (2, 12, 1),
}

MAX_Q = 1024


class FieldError(ValueError):
    pass


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_poly_irreducible(p, f):
    ctx = _prime_ctx(p)
    f = list(f)
    if not f or f[-1] != 1:
        return False
    return K.is_irreducible(ctx, f)


@lru_cache(maxsize=None)
def _prime_ctx(p):
    add = [(a + b) % p for a in range(p) for b in range(p)]
    sub = [(a - b) % p for a in range(p) for b in range(p)]
    mul = [(a * b) % p for a in range(p) for b in range(p)]
    neg = [(-a) % p for a in range(p)]
    inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    return K.FieldCtx(p, add, sub, mul, neg, inv)


def default_modulus(p, m):
    """Conway polynomial when tabulated, else the first irreducible in base-p order."""
    if (p, m) in CONWAY:
        return CONWAY[(p, m)]
    irr = K.irreducible_monics(_prime_ctx(p), m)
    return tuple(irr[0])


class FieldSpec:
    """Defining data (p, m, modulus) of F_q with q = p^m."""

    def __init__(self, p, m=1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree m")
        if not _prime_poly_irreducible(p, modulus):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        if p ** m > MAX_Q:
            raise FieldError(f"q = {p ** m} exceeds the supported bound {MAX_Q}")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = p ** m

    def key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def to_json(self):
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["p"]), int(obj.get("m", 1)), obj.get("modulus"))

    @classmethod
    def from_q(cls, q):
        p = 2
        while q % p:
            p += 1
        m, n = 0, q
        while n % p == 0:
            n //= p
            m += 1
        if n != 1:
            raise FieldError(f"q = {q} is not a prime power")
        return cls(p, m)


class FiniteField:
    """Arithmetic in F_q on the int encoding.

    Use :func:`get_field` to obtain a shared instance for a spec.
    """

    def __init__(self, spec):
        self.spec = spec
        p, m, q = spec.p, spec.m, spec.q
        self.p, self.m, self.q = p, m, q
        coords = [self._digits(a) for a in range(q)]
        # multiplication of coordinate vectors modulo the modulus
        pctx = _prime_ctx(p)
        mod = list(spec.modulus)
        add, sub, mul = [0] * (q * q), [0] * (q * q), [0] * (q * q)
        for a in range(q):
            ca = coords[a]
            for b in range(q):
                cb = coords[b]
                add[a * q + b] = self._undigits([(x + y) % p for x, y in zip(ca, cb)])
                sub[a * q + b] = self._undigits([(x - y) % p for x, y in zip(ca, cb)])
                if b < a:
                    mul[a * q + b] = mul[b * q + a]
                    continue
                prod = K.poly_rem(pctx, K.poly_mul(pctx, _trim(ca), _trim(cb)), mod)
                mul[a * q + b] = self._undigits(prod)
        neg = [sub[0 * q + a] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = mul[a * q:(a + 1) * q]
            inv[a] = row.index(1)
        self.add_t, self.sub_t, self.mul_t, self.neg_t, self.inv_t = add, sub, mul, neg, inv
        self.ctx = K.FieldCtx(q, add, sub, mul, neg, inv)
        self.zero, self.one = 0, 1

    def _digits(self, a):
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        a = 0
        for c in reversed(list(ds) + [0] * (self.m - len(ds))):
            a = a * self.p + c
        return a

    def to_coords(self, a):
        """Coordinates of a in the basis 1, g, ..., g^{m-1}."""
        return self._digits(a)

    def from_coords(self, coords):
        if len(coords) != self.m:
            raise FieldError(f"expected {self.m} coordinates, got {len(coords)}")
        return self._undigits([int(c) % self.p for c in coords])

    def from_int(self, n):
        """Image of the integer n in the prime field."""
        return n % self.p

    def gen(self):
        """The class of g (equal to the residue of the modulus root)."""
        if self.m == 1:
            return (-self.spec.modulus[0]) % self.p
        return self.p

    def add(self, a, b):
        return self.add_t[a * self.q + b]

    def sub(self, a, b):
        return self.sub_t[a * self.q + b]

    def mul(self, a, b):
        return self.mul_t[a * self.q + b]

    def neg(self, a):
        return self.neg_t[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.inv_t[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, a, j=1):
        """Absolute Frobenius a^(p^j); negative j inverts it."""
        j %= self.m
        return self.pow(a, self.p ** j)

    def frobenius_power(self, a, j):
        """a^(q^j); this is the identity on F_q for every integer j."""
        return self.frobenius(a, self.m * j)

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"F_{self.q}"


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


@lru_cache(maxsize=None)
def get_field(spec):
    return FiniteField(spec)


def field_for_q(q):
    return get_field(FieldSpec.from_q(q))
