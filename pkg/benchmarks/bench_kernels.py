#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two convolution kernels on ladder-sized inputs and the full
pipeline on the bundled nonlinear problems, e.g.:

    python benchmarks/bench_kernels.py --repeat 5
"""

from __future__ import annotations

import argparse
import random
import time

from hpm_bvp import available_backends, problems, solve_source, use_backend
from hpm_bvp._kernels import pure

try:
    from hpm_bvp._kernels import _fastcore
except ImportError:
    _fastcore = None


def random_terms(rng, nsym, max_exp, n_terms):
    out = {}
    for _ in range(n_terms):
        mono = tuple(rng.randrange(max_exp + 1) for _ in range(nsym))
        out[mono] = rng.uniform(-4.0, 4.0)
    return out


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def row(label, pure_s, fast_s):
    if fast_s is None:
        print(f"{label:<34} {pure_s * 1e3:>10.2f} ms {'-':>12} {'-':>9}")
    else:
        print(
            f"{label:<34} {pure_s * 1e3:>10.2f} ms {fast_s * 1e3:>9.2f} ms "
            f"{pure_s / fast_s:>8.1f}x"
        )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="best-of repetitions")
    args = parser.parse_args()

    print(f"available backends: {', '.join(available_backends())}")
    print(f"{'workload':<34} {'pure':>13} {'compiled':>12} {'speedup':>9}")

    rng = random.Random(42)
    nsym, cap = 3, 32
    poly_a = random_terms(rng, nsym, max_exp=4, n_terms=25)
    poly_b = random_terms(rng, nsym, max_exp=4, n_terms=25)
    series_a = [random_terms(rng, nsym, max_exp=3, n_terms=8) for _ in range(cap + 1)]
    series_b = [random_terms(rng, nsym, max_exp=3, n_terms=8) for _ in range(cap + 1)]

    def poly_pure():
        for _ in range(200):
            pure.poly_mul(poly_a, poly_b, nsym)

    def series_pure():
        for _ in range(5):
            pure.series_mul(series_a, series_b, nsym, cap)

    pure_poly = best_of(poly_pure, args.repeat)
    pure_series = best_of(series_pure, args.repeat)
    if _fastcore is not None:

        def poly_fast():
            for _ in range(200):
                _fastcore.poly_mul(poly_a, poly_b, nsym)

        def series_fast():
            for _ in range(5):
                _fastcore.series_mul(series_a, series_b, nsym, cap)

        fast_poly = best_of(poly_fast, args.repeat)
        fast_series = best_of(series_fast, args.repeat)
    else:
        fast_poly = fast_series = None
    row("poly_mul (25x25 terms, 200 calls)", pure_poly, fast_poly)
    row("series_mul (deg 32, 5 calls)", pure_series, fast_series)

    solves = [
        ("full solve ex3_4", "ex3_4", {}),
        ("full solve ex3_6", "ex3_6", {}),
        ("deep ladder ex3_3 (K=7, cap 64)", "ex3_3", {"terms": 7, "cap": 64}),
    ]
    for label, name, overrides in solves:
        source = problems.load_text(name)
        use_backend("pure")
        pure_solve = best_of(lambda: solve_source(source, **overrides), args.repeat)
        if _fastcore is not None:
            use_backend("compiled")
            fast_solve = best_of(lambda: solve_source(source, **overrides), args.repeat)
        else:
            fast_solve = None
        use_backend("auto")
        row(label, pure_solve, fast_solve)


if __name__ == "__main__":
    main()
