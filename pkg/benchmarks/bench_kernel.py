"""Benchmark: compiled row-reduction kernel vs the pure-Python fallback.

Runs both implementations on identical random inputs over Q and F_5,
verifies they agree bit-for-bit, and prints timings.

    python3 benchmarks/bench_kernel.py [--size 60] [--reps 5] [--seed 0]
"""

import argparse
import random
import time
from fractions import Fraction

from siltglue._kernel import _rref_py

try:
    from siltglue._kernel import _rref_cy
except ImportError:
    _rref_cy = None


def random_qq(rng, rows, cols):
    return [
        [Fraction(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(cols)]
        for _ in range(rows)
    ]


def random_fp(rng, rows, cols, p):
    return [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]


def bench(fn, inputs, reps):
    best = None
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        for m in inputs:
            out = fn(m)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--count", type=int, default=8)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    n = args.size
    p = 5

    qq_inputs = [random_qq(rng, n, n + 4) for _ in range(args.count)]
    fp_inputs = [random_fp(rng, n, n + 4, p) for _ in range(args.count)]

    print(f"matrix size {n}x{n + 4}, {args.count} matrices, best of {args.reps}")
    t_py, r_py = bench(_rref_py.rref_qq, qq_inputs, args.reps)
    print(f"  Q   pure-python gauss-jordan : {t_py:8.3f} s")
    t_bar, r_bar = bench(_rref_py.rref_qq_bareiss, qq_inputs, args.reps)
    print(f"  Q   pure-python fraction-free: {t_bar:8.3f} s")
    assert r_py == r_bar, "fraction-free variant disagrees"
    if _rref_cy is not None:
        t_cy, r_cy = bench(_rref_cy.rref_qq, qq_inputs, args.reps)
        print(f"  Q   compiled fraction-free   : {t_cy:8.3f} s   ({t_py / t_cy:.1f}x vs gauss-jordan)")
        assert r_py == r_cy, "compiled Q kernel disagrees"

    t_py, r_py = bench(lambda m: _rref_py.rref_fp(m, p), fp_inputs, args.reps)
    print(f"  F_{p} pure-python             : {t_py:8.3f} s")
    if _rref_cy is not None:
        t_cy, r_cy = bench(lambda m: _rref_cy.rref_fp(m, p), fp_inputs, args.reps)
        print(f"  F_{p} compiled                : {t_cy:8.3f} s   ({t_py / t_cy:.1f}x)")
        assert r_py == r_cy, "compiled F_p kernel disagrees"
    if _rref_cy is None:
        print("  compiled kernel not available; only the fallback was timed")


if __name__ == "__main__":
    main()
