"""t-modules (G_a^d, φ) over K, the standard constructors, and φ(a)."""

import hashlib
import json

from . import matrix as mx
from .poly import APoly, RationalFn, as_rational

LABELS = ("drinfeld", "carlitz_tensor", "g_n", "wedge", "wedge_tensor",
          "g_prime", "g_tilde", "custom")


class ModuleError(ValueError):
    pass


class SkewPoly:
    """Σ A_i τ^i with d×d matrix coefficients over K, where τc = c^q τ."""

    def __init__(self, coeffs):
        coeffs = [list(map(list, c)) for c in coeffs]
        while len(coeffs) > 1 and mx.is_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            raise ModuleError("empty skew polynomial")
        self.coeffs = coeffs
        self.d = len(coeffs[0])
        self.F = coeffs[0][0][0].F

    @classmethod
    def scalar(cls, F, d, a):
        return cls([mx.identity(F, d, as_rational(F, a))])

    @property
    def degree(self):
        if len(self.coeffs) == 1 and mx.is_zero(self.coeffs[0]):
            return -1
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return mx.zeros(self.F, self.d)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly([mx.add(self[i], other[i]) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly([mx.sub(self[i], other[i]) for i in range(n)])

    def __mul__(self, other):
        n = len(self.coeffs) + len(other.coeffs) - 1
        out = [mx.zeros(self.F, self.d) for _ in range(n)]
        for i, a in enumerate(self.coeffs):
            if mx.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if mx.is_zero(b):
                    continue
                out[i + j] = mx.add(out[i + j], mx.mul(a, mx.twist(b, i)))
        return SkewPoly(out)

    def __eq__(self, other):
        if not isinstance(other, SkewPoly) or self.d != other.d:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return all(mx.equal(self[i], other[i]) for i in range(n))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if mx.is_zero(c):
                continue
            if self.d == 1:
                s = str(c[0][0])
                parts.append(s if i == 0 else f"({s})τ^{i}" if i > 1 else f"({s})τ")
            else:
                parts.append(f"A_{i} =\n{mx.to_str(c)}")
        if self.d == 1:
            return " + ".join(parts) or "0"
        return "\n".join(parts)


class TModule:
    """A t-module given by φ(t) = A_0 + A_1τ + ... + A_mτ^m.

    ``rank`` and ``weight`` record provenance data used by the local factor
    code (the weight bounds the t-degree of the Frobenius polynomial).
    """

    def __init__(self, F, coeffs, label="custom", params=None, rank=None, weight=None):
        if label not in LABELS:
            raise ModuleError(f"unknown module label {label!r}")
        mats = [mx.from_entries(F, c) for c in coeffs]
        d = len(mats[0])
        for c in mats:
            if len(c) != d or any(len(row) != d for row in c):
                raise ModuleError("coefficient matrices must be square of equal size")
        self.F = F
        self.phi_t = SkewPoly(mats)
        self.d = d
        self.label = label
        self.params = dict(params or {})
        self.rank = rank
        self.weight = weight
        theta = mx.ktheta(F)
        self.N = mx.sub(mats[0], mx.identity(F, d, theta))
        if not mx.is_zero(mx.power(self.N, d)):
            raise ModuleError("A_0 - θ·Id is not nilpotent")
        self._exp = None
        self._log = None

    @property
    def coeffs(self):
        return self.phi_t.coeffs

    @property
    def degree(self):
        return self.phi_t.degree

    def nilpotency_index(self):
        k, P = 0, mx.identity(self.F, self.d)
        while not mx.is_zero(P):
            P = mx.mul(P, self.N)
            k += 1
        return k

    def is_integral(self):
        return all(x.is_integral() for c in self.coeffs for row in c for x in row)

    def matrices_json(self):
        return [[[x.to_json() for x in row] for row in c] for c in self.coeffs]

    def content_hash(self):
        """sha256 over the field and the coefficient matrices."""
        blob = json.dumps({"field": self.F.spec.to_json(), "matrices": self.matrices_json()},
                          sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def __str__(self):
        head = f"{self.label} t-module of dimension {self.d}"
        if self.rank is not None:
            head += f", rank {self.rank}"
        return head + "\nφ(t) = " + ("\n" if self.d > 1 else "") + str(self.phi_t)

    def __repr__(self):
        return f"TModule(label={self.label!r}, d={self.d}, params={self.params})"


# -- constructors ---------------------------------------------------------------


def _k(F, x):
    return as_rational(F, x)


def make_drinfeld(F, coeffs):
    """Drinfeld module θ + a_1τ + ... + a_rτ^r."""
    a = [_k(F, x) for x in coeffs]
    if not a or a[-1].is_zero():
        raise ModuleError("the top coefficient a_r must be nonzero")
    theta = mx.ktheta(F)
    mats = [[[theta]]] + [[[x]] for x in a]
    return TModule(F, mats, "drinfeld", {"coeffs": a}, rank=len(a), weight=1)


def make_carlitz(F):
    return make_drinfeld(F, [1])


def make_carlitz_tensor(F, n, b=1):
    """C_n^{(b)}: θ·Id + N + E τ with b in the bottom-left corner of E."""
    if n < 1:
        raise ModuleError("n must be >= 1")
    b = _k(F, b)
    if b.is_zero():
        raise ModuleError("b must be nonzero")
    one = mx.kone(F)
    A0 = mx.identity(F, n, mx.ktheta(F))
    for i in range(n - 1):
        A0[i][i + 1] = one
    A1 = mx.zeros(F, n)
    A1[n - 1][0] = b
    return TModule(F, [A0, A1], "carlitz_tensor", {"n": n, "b": b}, rank=1, weight=n)


def _drinfeld_coeffs(phi):
    if phi.label != "drinfeld" and not (phi.d == 1 and phi.rank):
        raise ModuleError("expected a Drinfeld module")
    return [phi.coeffs[i][0][0] for i in range(1, len(phi.coeffs))]


def _require_rank(phi, lo=2):
    a = _drinfeld_coeffs(phi)
    if len(a) < lo:
        raise ModuleError(f"rank must be >= {lo}, got {len(a)}")
    return a


def _g_matrices(F, a, n, scale=None):
    """N and E of φ ⊗ C^{⊗n}; E's τ-part optionally multiplied by ``scale``."""
    r = len(a)
    d = r * n + 1
    one = mx.kone(F)
    N = mx.zeros(F, d)
    for i in range(d - r):
        N[i][i + r] = one
    E = mx.zeros(F, d)
    for j in range(1, r):
        E[d - r + j - 1][j - 1] = one
    for j in range(r):
        E[d - 1][j] = a[j]
    if scale is not None:
        E = mx.scale(E, scale)
    return N, E


def make_g_n(phi, n):
    """G_n = φ ⊗ C^{⊗n} of dimension rn+1 (n = 0 returns φ itself)."""
    a = _require_rank(phi)
    F, r = phi.F, len(a)
    if n == 0:
        return phi
    if n < 0:
        raise ModuleError("n must be >= 0")
    N, E = _g_matrices(F, a, n)
    A0 = mx.add(mx.identity(F, r * n + 1, mx.ktheta(F)), N)
    return TModule(F, [A0, E], "g_n", {"r": r, "n": n, "coeffs": a}, rank=r, weight=r * n + 1)


def _wedge_matrices(F, a):
    r = len(a)
    sign = 1 if (r - 1) % 2 == 0 else -1
    E1 = mx.zeros(F, r - 1)
    for i in range(r - 1):
        E1[i][0] = -a[r - 2 - i]
        if i + 1 < r - 1:
            E1[i][i + 1] = a[r - 1]
    if sign < 0:
        E1 = mx.neg(E1)
    E2 = mx.zeros(F, r - 1)
    E2[r - 2][0] = a[r - 1]
    return E1, E2


def make_wedge(phi):
    """∧^{r-1}φ of dimension r-1: θ·Id + E_1'τ + E_2'τ^2."""
    a = _require_rank(phi)
    F, r = phi.F, len(a)
    E1, E2 = _wedge_matrices(F, a)
    A0 = mx.identity(F, r - 1, mx.ktheta(F))
    return TModule(F, [A0, E1, E2], "wedge", {"r": r, "coeffs": a}, rank=r, weight=r - 1)


def _wedge_tensor_matrices(F, a, n):
    r = len(a)
    d = r * n + r - 1
    one = mx.kone(F)
    N = mx.zeros(F, d)
    for i in range(d - r):
        N[i][i + r] = one
    E = mx.zeros(F, d)
    E[d - r][0] = one
    for j in range(1, r):
        E[d - r + j][0] = -a[r - 1 - j]
        E[d - r + j][j] = a[r - 1]
    if (r - 1) % 2:
        E = mx.neg(E)
    return N, E


def make_wedge_tensor(phi, n):
    """(∧^{r-1}φ) ⊗ C^{⊗n} of dimension rn+r-1 (n = 0 gives the wedge)."""
    a = _require_rank(phi)
    if n == 0:
        return make_wedge(phi)
    if n < 0:
        raise ModuleError("n must be >= 0")
    F, r = phi.F, len(a)
    N, E = _wedge_tensor_matrices(F, a, n)
    A0 = mx.add(mx.identity(F, r * n + r - 1, mx.ktheta(F)), N)
    return TModule(F, [A0, E], "wedge_tensor", {"r": r, "n": n, "coeffs": a},
                   rank=r, weight=r * n + r - 1)


def _unit_u(F, a):
    r = len(a)
    u = a[-1].inverse()
    return -u if (r - 1) % 2 else u


def make_g_prime(phi, n):
    """G'_n: the wedge tensor conjugated by γ with γ^{q-1} = (-1)^{r-1}a_r^{-1}.

    Conjugation multiplies the τ^i coefficient by γ^{q^i-1}, which lies in K,
    so no root is ever taken.
    """
    a = _require_rank(phi)
    F, r, q = phi.F, len(a), phi.F.q
    u = _unit_u(F, a)
    params = {"r": r, "n": n, "coeffs": a}
    if n == 0:
        E1, E2 = _wedge_matrices(F, a)
        u2 = u ** (q + 1)
        A0 = mx.identity(F, r - 1, mx.ktheta(F))
        return TModule(F, [A0, mx.scale(E1, u), mx.scale(E2, u2)], "g_prime", params,
                       rank=r, weight=r - 1)
    if n < 0:
        raise ModuleError("n must be >= 0")
    N, E = _wedge_tensor_matrices(F, a, n)
    A0 = mx.add(mx.identity(F, r * n + r - 1, mx.ktheta(F)), N)
    return TModule(F, [A0, mx.scale(E, u)], "g_prime", params, rank=r, weight=r * n + r - 1)


def make_g_tilde(psi, n):
    """G̃_n = ψ ⊗ C^{⊗(n+1)} ⊗ det(ψ)^∨, defined over A when a_r ∈ F_q^×."""
    a = _require_rank(psi)
    F, r = psi.F, len(a)
    if not all(x.is_integral() for x in a):
        raise ModuleError("coefficients a_1..a_{r-1} must lie in A")
    if not a[-1].is_constant() or a[-1].is_zero():
        raise ModuleError("a_r must be a nonzero constant")
    u = _unit_u(F, a)
    params = {"r": r, "n": n, "coeffs": a}
    if n == 0:
        theta = mx.ktheta(F)
        mats = [[[theta]]] + [[[a[i] * u ** (i + 1)]] for i in range(r)]
        return TModule(F, mats, "g_tilde", params, rank=r, weight=1)
    if n < 0:
        raise ModuleError("n must be >= 0")
    N, E = _g_matrices(F, a, n, scale=u)
    A0 = mx.add(mx.identity(F, r * n + 1, mx.ktheta(F)), N)
    return TModule(F, [A0, E], "g_tilde", params, rank=r, weight=r * n + 1)


def make_custom(F, coeffs, rank=None, weight=None):
    return TModule(F, coeffs, "custom", {}, rank=rank, weight=weight)


def conjugate(G, c):
    """c^{-1}·φ·c for a scalar c ∈ K^×: the τ^i coefficient scales by c^{q^i-1}."""
    c = _k(G.F, c)
    q = G.F.q
    mats = [mx.scale(A, c ** (q ** i - 1)) if i else A for i, A in enumerate(G.coeffs)]
    out = TModule(G.F, mats, G.label, G.params, G.rank, G.weight)
    return out


def conjugate_by_root(G, u):
    """Conjugation by a symbol γ with γ^{q-1} = u ∈ K^×.

    γ^{q^i-1} = u^{1+q+...+q^{i-1}}, so the result is defined over K.
    """
    u = _k(G.F, u)
    q = G.F.q
    mats = [mx.scale(A, u ** ((q ** i - 1) // (q - 1))) if i else A for i, A in enumerate(G.coeffs)]
    return TModule(G.F, mats, G.label, G.params, G.rank, G.weight)


def integral_model(G):
    """Return (G', 𝔞) with G' = 𝔞^{-1}G𝔞 defined over A.

    𝔞 is the lcm of all denominators; its first power always suffices because
    every exponent q^i - 1 with i ≥ 1 is at least 1.
    """
    F = G.F
    lcm = APoly(F, (1,))
    for A in G.coeffs[1:]:
        for row in A:
            for x in row:
                if not x.den.is_one():
                    lcm = (lcm * x.den) // lcm.gcd(x.den)
    if any(not x.is_integral() for row in G.coeffs[0] for x in row):
        raise ModuleError("A_0 must have entries in A")
    if lcm.is_one():
        return G, lcm
    return conjugate(G, RationalFn(lcm, reduced=True)), lcm


def phi_of_a(G, a):
    """φ(a) for a ∈ F_q[t], by Horner's rule in the skew ring."""
    F, d = G.F, G.d
    if isinstance(a, int):
        a = APoly(F, (F.from_int(a),), "t")
    if a.is_zero():
        return SkewPoly([mx.zeros(F, d)])
    res = SkewPoly.scalar(F, d, a.c[-1])
    for c in reversed(a.c[:-1]):
        res = G.phi_t * res
        if c:
            res = res + SkewPoly.scalar(F, d, c)
    return res


# -- module spec JSON -----------------------------------------------------------


def module_from_spec(obj, F=None):
    """Build a module from the JSON spec used by the CLI.

    Keys: field {p, m, modulus}, type, rank, n, coeffs (entries as APoly
    coordinate arrays or {num, den}), b, weight, matrices (custom).
    """
    from .field import FieldSpec, get_field
    if F is None:
        F = get_field(FieldSpec.from_json(obj["field"]))
    kind = obj.get("type", "drinfeld")

    def entry(x):
        if isinstance(x, int):
            return as_rational(F, x)
        return RationalFn.from_json(F, x)

    coeffs = [entry(x) for x in obj.get("coeffs", [])]
    n = int(obj.get("n", 0))
    if "rank" in obj and coeffs and int(obj["rank"]) != len(coeffs):
        raise ModuleError(f"rank {obj['rank']} does not match {len(coeffs)} coefficients")
    if kind == "carlitz":
        return make_carlitz(F)
    if kind == "drinfeld":
        return make_drinfeld(F, coeffs)
    if kind == "carlitz_tensor":
        return make_carlitz_tensor(F, n or 1, entry(obj.get("b", 1)))
    if kind == "custom":
        mats = [[[entry(x) for x in row] for row in A] for A in obj["matrices"]]
        return make_custom(F, mats, obj.get("rank"), obj.get("weight"))
    phi = make_drinfeld(F, coeffs)
    builders = {
        "g_n": lambda: make_g_n(phi, n),
        "wedge": lambda: make_wedge(phi),
        "wedge_tensor": lambda: make_wedge_tensor(phi, n),
        "g_prime": lambda: make_g_prime(phi, n),
        "g_tilde": lambda: make_g_tilde(phi, n),
    }
    if kind not in builders:
        raise ModuleError(f"unknown module type {kind!r}")
    return builders[kind]()
