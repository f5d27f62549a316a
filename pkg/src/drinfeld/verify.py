"""Named self-checks run by ``drinfeld verify``.

Each check returns ``(ok, detail)``.  Parameters are kept small so the whole
suite runs in seconds for q ≤ 3; random inputs come from a seeded generator.
"""

import random

from .explog import (agf, agf_residual, exp_eval, exp_series, functional_equation_residual,
                     log_eval, log_series, residual_agreement)
from .laurent import LaurentSeries, rational_reconstruct
from .lfunc import (count_lie, count_module, dual_factor_at_one, eigenvalue_transform_check,
                    frobenius_charpoly, goss_factor, goss_L, taelman_L, zeta_direct,
                    default_aux_primes, t_action_matrix)
from .poly import APoly, RationalFn, monic_irreducibles, primes_up_to
from .smith import module_order
from .tate import carlitz_period, omega_residual, pi_tilde_from_omega
from .tmodule import (make_carlitz, make_carlitz_tensor, make_drinfeld, make_g_n, make_g_prime,
                      make_g_tilde, make_wedge, make_wedge_tensor)


def check_omega(F, rng):
    res, prec = omega_residual(F, 12, 40)
    return res.is_zero() and prec >= 40, f"residual zero to θ^-{prec}"


def check_pi_tilde(F, rng):
    a = carlitz_period(F, 30)
    b = pi_tilde_from_omega(F, 30)
    agree = a.agreement(b)
    return agree is None or agree >= 30, f"agreement {agree}"


def check_exp_closed_forms(F, rng):
    C = make_carlitz(F)
    q = F.q
    th = APoly.x(F)
    es, ls = exp_series(C, 6), log_series(C, 6)
    Dp = APoly(F, (1,))
    Lp = APoly(F, (1,))
    for i in range(7):
        if i:
            Dp = Dp.frobenius_twist(1) * (APoly.monomial(F, q ** i) - th)
            Lp = Lp * (th - APoly.monomial(F, q ** i))
        if es.coeff(i)[0][0] != RationalFn(APoly(F, (1,)), Dp):
            return False, f"exp coefficient {i}"
        if ls.coeff(i)[0][0] != RationalFn(APoly(F, (1,)), Lp):
            return False, f"log coefficient {i}"
    return True, "D_i and L_i through i = 6"


def check_exp_log_inverse(F, rng):
    C = make_carlitz(F)
    worst = None
    for _ in range(5):
        x = _small_input(F, rng)
        y = exp_eval(C, log_eval(C, [x], 34), 30)[0]
        a = y.agreement(x)
        a = 30 if a is None else a
        worst = a if worst is None else min(worst, a)
    return worst >= 30, f"agreement ≥ θ^-{worst}"


def check_functional_equation(F, rng):
    phi = make_drinfeld(F, [1, 1])
    for mk in (make_g_n, make_wedge_tensor, make_g_prime, make_g_tilde):
        for n in (0, 1):
            G = mk(phi, n)
            if not all(x.is_zero() for x in functional_equation_residual(G, exp_series(G, 6))):
                return False, f"{G.label} n={n}"
    return True, "residual zero through τ^6"


def check_agf(F, rng):
    phi = make_drinfeld(F, [1, 1])
    for G in (make_carlitz(F), make_g_n(phi, 1)):
        w = [_small_input(F, rng) for _ in range(G.d)]
        kind, prec = residual_agreement(agf_residual(agf(G, w, 6, 12)))
        if kind != "zero" or (prec is not None and prec < 12):
            return False, f"{G.label}: {kind} {prec}"
    return True, "residual zero to θ^-12"


def check_zeta_taelman(F, rng):
    z = zeta_direct(F, 1, M=15)
    L = taelman_L(make_carlitz(F), 8, 15)
    a = L.value.agreement(z)
    a = 15 if a is None else a
    return a >= 8 and L.stabilized, f"agreement θ^-{a}, stabilized={L.stabilized}"


def check_goss_zeta(F, rng):
    D, M = 6, 12
    C = make_carlitz(F)
    details = []
    ok = True
    for n in (2, 3):
        g = goss_L(C, n, D, M).value
        z = zeta_direct(F, n - 1, M=M)
        # primes of degree > D change the product only below θ^{-(n-1)(D+1)}
        need = min(M, (n - 1) * (D + 1))
        a = g.agreement(z)
        a = M if a is None else a
        ok = ok and a >= need
        details.append(f"n={n}: θ^-{a} (need {need})")
    return ok, ", ".join(details)


def check_log_algebraicity(F, rng):
    z = zeta_direct(F, 1, M=15)
    lg = log_eval(make_carlitz(F), [1], 15)[0]
    a = z.agreement(lg)
    return a is None or a >= 15, f"agreement {a}"


def check_euler_carlitz(F, rng):
    q = F.q
    z = zeta_direct(F, q - 1, M=30)
    pi = carlitz_period(F, 34) ** (q - 1)
    rec = rational_reconstruct(z / pi.project_to_kinf(), q + 2)
    return rec.ok, str(rec.value)


def check_local_factors(F, rng):
    th = APoly.x(F)
    phi = make_drinfeld(F, [th, -1])
    for beta in primes_up_to(F, 2):
        fp = frobenius_charpoly(phi, beta)
        if dual_factor_at_one(_lf(phi, beta, fp)) != RationalFn(count_module(phi, beta), count_lie(phi, beta)):
            return False, f"ratio identity at {beta}"
    return True, "c^-1 Q(1) = count and Q(1)/Q(0) = count_G/count_Lie"


def check_goss_taelman_prime(F, rng):
    phi = make_drinfeld(F, [1, -1])
    for n in (0, 1):
        Gp = make_g_prime(phi, n)
        for beta in primes_up_to(F, 2):
            num, den = goss_factor(frobenius_charpoly(phi, beta), n + 1)
            if RationalFn(num, den) != RationalFn(count_lie(Gp, beta), count_module(Gp, beta)):
                return False, f"n={n} β={beta}"
    return True, "per-prime factors equal"


def check_eigen_transforms(F, rng):
    phi = make_drinfeld(F, [1, -1])
    for n in (0, 1):
        for beta in primes_up_to(F, 1):
            rep = eigenvalue_transform_check(phi, n, beta)
            if not rep:
                return False, repr(rep)
    return True, "G̃_n and G'_n match"


def check_smith(F, rng):
    phi = make_drinfeld(F, [1, 1])
    count = 0
    for G in (make_carlitz(F), make_carlitz_tensor(F, 2), phi, make_wedge(make_drinfeld(F, [1, 0, 1]))):
        for beta in primes_up_to(F, 3):
            if G.d * beta.degree > 6:
                continue
            if module_order(t_action_matrix(G, beta), F) != count_module(G, beta):
                return False, f"{G.label} β={beta}"
            count += 1
    return True, f"{count} pairs"


def check_v_independence(F, rng):
    phi = make_drinfeld(F, [1, -1])
    G = make_g_prime(phi, 1)
    for beta in primes_up_to(F, 1):
        one = [v for v in monic_irreducibles(F, 1, "t") if v.substitute("θ") != beta]
        two = [v for v in default_aux_primes(F, beta) if v.degree == 2]
        a = frobenius_charpoly(G, beta, method="motive", aux_primes=one)
        b = frobenius_charpoly(G, beta, method="motive", aux_primes=two)
        if a != b:
            return False, f"β={beta}"
    return True, "disjoint auxiliary primes agree"


def _lf(G, beta, fp):
    from .lfunc import LocalFactor
    return LocalFactor(beta, count_module(G, beta), count_lie(G, beta), fp.coeffs, fp.c)


def _small_input(F, rng):
    """A random element of valuation ≥ 1 with a short expansion."""
    v = rng.randint(1, 3)
    coeffs = [rng.randrange(F.q) for _ in range(4)]
    coeffs[0] = rng.randrange(1, F.q)
    return LaurentSeries(F, v, coeffs)


SUITES = {
    "omega": [("omega_functional_equation", check_omega), ("pi_tilde_two_ways", check_pi_tilde)],
    "explog": [("exp_log_closed_forms", check_exp_closed_forms),
               ("exp_log_inverse", check_exp_log_inverse),
               ("exp_functional_equation", check_functional_equation),
               ("agf_identity", check_agf)],
    "lvalues": [("taelman_zeta", check_zeta_taelman), ("goss_zeta", check_goss_zeta),
                ("log_algebraicity", check_log_algebraicity),
                ("euler_carlitz", check_euler_carlitz)],
    "local": [("local_ratio_identity", check_local_factors),
              ("goss_taelman_per_prime", check_goss_taelman_prime),
              ("eigenvalue_transforms", check_eigen_transforms),
              ("smith_oracle", check_smith), ("v_independence", check_v_independence)],
}


def run_suite(F, suite="all", seed=0):
    """Run a suite; returns a list of {name, ok, detail} dicts."""
    if suite == "all":
        checks = [c for name in SUITES for c in SUITES[name]]
    elif suite in SUITES:
        checks = SUITES[suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    out = []
    for name, fn in checks:
        rng = random.Random(f"{seed}:{name}")
        try:
            ok, detail = fn(F, rng)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"name": name, "ok": bool(ok), "detail": detail})
    return out
