"""Command-line front end: ``drinfeld <command> [options]``."""

import argparse
import json
import os
import sys

from . import matrix as mx
from .cache import LocalFactorCache
from .field import FieldError, FieldSpec, get_field
from .lfunc import (DivergenceRefused, FrobeniusPoly, goss_L, local_factor, taelman_L,
                    zeta_direct)
from .poly import APoly, primes_up_to
from .residue import ReductionError
from .tmodule import ModuleError, module_from_spec

DEFAULT_M = 15
DEFAULT_T = 12
DEFAULT_D = 6


class UsageError(Exception):
    pass


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("field")
    g.add_argument("--q", type=int, help="field size (a prime power)")
    g.add_argument("--p", type=int, help="characteristic")
    g.add_argument("--m", type=int, default=None, help="extension degree over F_p")
    g.add_argument("--modulus", help="defining polynomial of F_q over F_p, coefficients low to high, comma separated")
    common.add_argument("--module", help="module spec: JSON file path or inline JSON")
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--max-deg", type=int, default=None, help="degree cutoff D")
    common.add_argument("--prec", type=int, default=DEFAULT_M, help="θ-precision M")
    common.add_argument("--t-prec", type=int, default=DEFAULT_T, help="t-precision T")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache", help="local-factor cache file (JSON lines)")

    parser = argparse.ArgumentParser(prog="drinfeld", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("construct", parents=[common], help="print the matrices A_0..A_m of φ(t)")
    sub.add_parser("zeta", parents=[common], help="Carlitz zeta value by direct summation")
    sub.add_parser("taelman", parents=[common], help="Taelman L-value from point counts")
    gp = sub.add_parser("goss", parents=[common], help="Goss L-value from Frobenius polynomials")
    gp.add_argument("--dual", action="store_true", help="product of Q(0)/Q(1) instead")
    lp = sub.add_parser("localfactor", parents=[common], help="per-prime counts and Q_β")
    lp.add_argument("--beta", help="one prime, coefficients low to high, comma separated")
    vp = sub.add_parser("verify", parents=[common], help="run the built-in checks")
    vp.add_argument("--suite", default="all")
    vp.add_argument("--seed", type=int, default=0)
    return parser


# -- config ---------------------------------------------------------------------


def _ints(text, what):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}")


def _field_from_flags(args):
    try:
        if args.p is not None:
            mod = _ints(args.modulus, "--modulus") if args.modulus else None
            spec = FieldSpec(args.p, args.m or (len(mod) - 1 if mod else 1), mod)
            if args.q is not None and args.q != spec.q:
                raise UsageError(f"--q {args.q} disagrees with p^m = {spec.q}")
            return spec
        if args.modulus or args.m:
            raise UsageError("--m and --modulus need --p")
        if args.q is not None:
            return FieldSpec.from_q(args.q)
    except FieldError as exc:
        raise UsageError(str(exc))
    return None


def _load_module_json(text):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"module spec is not valid JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}")


def load_config(args):
    """Field and module from the flags; a field in the module spec must agree."""
    flag_spec = _field_from_flags(args)
    obj = _load_module_json(args.module) if args.module else None
    spec = flag_spec
    if obj is not None and "field" in obj:
        try:
            mspec = FieldSpec.from_json(obj["field"])
        except (FieldError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"module spec field: {exc}")
        if flag_spec is not None and mspec != flag_spec:
            raise UsageError("the module spec field differs from the field flags")
        spec = mspec
    if spec is None:
        spec = FieldSpec.from_q(2)
    F = get_field(spec)
    G = None
    if obj is not None:
        try:
            G = module_from_spec(obj, F)
        except (ModuleError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"module spec: {type(exc).__name__}: {exc}")
    return F, G


# -- output ---------------------------------------------------------------------


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        print("\n".join(text_lines))


def _series_lines(x):
    return [f"value: {x}", f"valuation: {x.v}", f"coefficients: {list(x.c)}",
            f"precision: {x.prec}"]


def _lvalue(args, command, F, G, lv):
    payload = {"command": command, "field": F.spec.to_json(), "result": lv.to_json()}
    if G is not None:
        payload["module"] = G.label
    lines = _series_lines(lv.value) + [
        f"D: {lv.D}  M: {lv.M}  stabilized: {'yes' if lv.stabilized else 'no'} (stable to θ^-{lv.stable_to})",
        "skipped primes: " + (", ".join(str(b) for b in lv.skipped) or "none"),
    ]
    _emit(args, payload, lines)
    return 0 if lv.stabilized else 1


def _cache(args, F):
    return LocalFactorCache(args.cache, F) if args.cache else None


# -- commands ---------------------------------------------------------------------


def cmd_construct(args, F, G):
    if G is None:
        raise UsageError("construct needs --module")
    payload = {"command": "construct", "field": F.spec.to_json(), "label": G.label,
               "dimension": G.d, "rank": G.rank, "weight": G.weight,
               "matrices": G.matrices_json()}
    lines = [f"{G.label}: dimension {G.d}, rank {G.rank}, weight {G.weight}"]
    for i, A in enumerate(G.coeffs):
        lines.append(f"A_{i} =")
        lines.append(mx.to_str(A))
    _emit(args, payload, lines)
    return 0


def cmd_zeta(args, F, G):
    n = args.n if args.n is not None else 1
    if n < 1:
        raise UsageError("--n must be >= 1")
    z = zeta_direct(F, n, args.max_deg, args.prec)
    payload = {"command": "zeta", "field": F.spec.to_json(), "n": n, "result": z.to_json()}
    _emit(args, payload, _series_lines(z))
    return 0


def _module_or_carlitz(F, G):
    if G is not None:
        return G
    return module_from_spec({"type": "carlitz"}, F)


def cmd_taelman(args, F, G):
    G = _module_or_carlitz(F, G)
    lv = taelman_L(G, args.max_deg or DEFAULT_D, args.prec, cache=_cache(args, F))
    return _lvalue(args, "taelman", F, G, lv)


def cmd_goss(args, F, G):
    G = _module_or_carlitz(F, G)
    if args.n is None and not args.dual:
        raise UsageError("goss needs --n")
    mode = "dual" if args.dual else "goss"
    lv = goss_L(G, args.n or 0, args.max_deg or DEFAULT_D, args.prec, mode=mode,
                cache=_cache(args, F))
    return _lvalue(args, "goss", F, G, lv)


def cmd_localfactor(args, F, G):
    G = _module_or_carlitz(F, G)
    cache = _cache(args, F)
    if args.beta:
        beta = APoly(F, _ints(args.beta, "--beta"))
        if not beta.is_monic() or not beta.is_irreducible():
            raise UsageError(f"β = {beta} is not monic irreducible")
        primes = [beta]
    else:
        primes = primes_up_to(F, args.max_deg or 2)
    records, lines = [], []
    status = 0
    for beta in primes:
        try:
            lf = local_factor(G, beta, with_q=G.rank is not None, cache=cache)
        except ReductionError as exc:
            records.append({"beta": beta.to_json(), "skipped": str(exc)})
            lines.append(f"β = {beta}: skipped ({exc})")
            continue
        rec = lf.to_json()
        records.append(rec)
        lines.append(f"β = {beta}")
        lines.append(f"  count_G   = {lf.count_G}")
        lines.append(f"  count_Lie = {lf.count_Lie}")
        if lf.qpoly is not None:
            fp = FrobeniusPoly(beta, lf.qpoly, lf.c, G.weight, "stored")
            lines.append(f"  Q_β(X)    = {fp}")
            lines.append(f"  c         = {lf.c}")
        problems = lf.check()
        if problems:
            status = 1
            lines.extend(f"  problem: {p}" for p in problems)
    payload = {"command": "localfactor", "field": F.spec.to_json(), "module": G.label,
               "factors": records}
    _emit(args, payload, lines)
    return status


def cmd_verify(args, F, G):
    from .verify import run_suite
    try:
        results = run_suite(F, args.suite, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.cache:
        cache = LocalFactorCache(args.cache, F)
        modules = {G.content_hash(): G} if G is not None else None
        problems = cache.verify(modules)
        results.append({"name": "cache_consistency", "ok": not problems,
                        "detail": "; ".join(f"{h[:12]} β={b}: {m}" for h, b, m in problems)
                        or f"{len(cache)} records"})
    ok = all(r["ok"] for r in results)
    payload = {"command": "verify", "field": F.spec.to_json(), "suite": args.suite,
               "seed": args.seed, "passed": ok, "checks": results}
    lines = [f"{'PASS' if r['ok'] else 'FAIL'}  {r['name']}: {r['detail']}" for r in results]
    lines.append(f"{sum(r['ok'] for r in results)}/{len(results)} checks passed")
    _emit(args, payload, lines)
    return 0 if ok else 1


COMMANDS = {
    "construct": cmd_construct,
    "zeta": cmd_zeta,
    "taelman": cmd_taelman,
    "goss": cmd_goss,
    "localfactor": cmd_localfactor,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("prec", "t_prec", "max_deg"):
        val = getattr(args, name)
        if val is not None and val < 1:
            parser.error(f"--{name.replace('_', '-')} must be >= 1")
    try:
        F, G = load_config(args)
        return COMMANDS[args.command](args, F, G)
    except UsageError as exc:
        parser.error(str(exc))
    except (ReductionError, DivergenceRefused, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
