"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from drinfeld._kernels import _pykernels as PY
from drinfeld.field import field_for_q

try:
    from drinfeld._kernels import _ckernels as C
except ImportError:
    C = None


def rand_poly(rng, q, n):
    a = [rng.randrange(q) for _ in range(n)]
    a[-1] = rng.randrange(1, q)
    return a


def cases(q, rng):
    a, b, m = rand_poly(rng, q, 400), rand_poly(rng, q, 300), rand_poly(rng, q, 60)
    big, big2 = rand_poly(rng, q, 3000), rand_poly(rng, q, 2000)
    s = rand_poly(rng, q, 200)
    s[0] = 1
    M = [[rng.randrange(q) for _ in range(24)] for _ in range(24)]
    return [
        ("poly_mul 400x300", "poly_mul", (a, b)),
        ("poly_divmod 400/60", "poly_divmod", (a, m)),
        ("poly_gcd 3000,2000", "poly_gcd", (big, big2)),
        ("poly_powmod e=10^6", "poly_powmod", (b[:50], 10 ** 6, m)),
        ("series_inv n=200", "series_inv", (s, 200)),
        ("is_irreducible deg 59", "is_irreducible", (m,)),
        ("charpoly 24x24", "charpoly", (M,)),
        ("rref 24x24", "rref", (M, 24)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--q", type=int, default=3)
    args = ap.parse_args()
    F = field_for_q(args.q)
    c = F.ctx
    tables = (c.q, c.add, c.sub, c.mul, c.neg, c.inv)
    pctx = PY.FieldCtx(*tables)
    cctx = C.FieldCtx(*tables) if C else None
    rng = random.Random(0)
    print(f"q = {args.q}, best of {args.repeat}")
    print(f"{'kernel':<24}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for label, name, fargs in cases(args.q, rng):
        tp = min(timeit.repeat(lambda: getattr(PY, name)(pctx, *fargs), number=1, repeat=args.repeat))
        if C:
            tc = min(timeit.repeat(lambda: getattr(C, name)(cctx, *fargs), number=1, repeat=args.repeat))
            assert getattr(C, name)(cctx, *fargs) == getattr(PY, name)(pctx, *fargs), name
            print(f"{label:<24}{tp * 1e3:>14.2f}{tc * 1e3:>14.3f}{tp / tc:>9.0f}x")
        else:
            print(f"{label:<24}{tp * 1e3:>14.2f}{'n/a':>14}{'':>10}")


if __name__ == "__main__":
    main()
