"""Times the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row runs one kernel on the same input in both backends, checks that the
outputs agree, and prints the best wall time of each plus the speedup. The
numba column excludes compilation (one warm-up call first).
"""

import argparse
import time

import numpy as np

from sum3ap.arith import small_primes
from sum3ap.kernels import jit, vec


def best_of(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def cases():
    n = 10**7 + 1
    yield "r2_table", lambda k: (k.r2_table(10**6),)
    yield "r3_two_loop", lambda k: (k.r3_two_loop(n),)
    ps = small_primes(int(n**0.5) + 2)
    yield "r3_sieve", lambda k: (k.r3_sieve(n, ps),)
    yield "r4_mitm", lambda k: (k.r4_mitm(10**5, k.r2_table(10**5)),)
    yield "ball_sum", lambda k: (k.ball_sum(10**6, 1, 4),)
    yield "r3_progression", lambda k: (k.r3_progression(10**5, 3, 8, k.r2_table(10**5)),)
    yield "bucket_counts_dense", lambda k: (k.bucket_counts_dense(70 * 11 * 13, 5),)
    yield "reps_in_class", lambda k: (k.reps_in_class(70 * 11 * 13, 3, 1, 1, 2, 2),)
    rng = np.random.default_rng(1)
    X = rng.integers(0, 81, size=(20_000, 4))
    A = (X * X).sum(axis=1) % 81
    keep = (X % 3 != 0).any(axis=1)
    X, A = X[keep], A[keep]
    yield "solve_prime_power", lambda k: (k.solve_prime_power(X, A, 3, 4),)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    print(f"{'kernel':<22}{'numba s':>10}{'numpy s':>10}{'speedup':>10}  agree")
    for name, call in cases():
        call(jit)  # compile
        tj, oj = best_of(lambda: call(jit), (), args.repeat)
        tv, ov = best_of(lambda: call(vec), (), args.repeat)
        print(f"{name:<22}{tj:>10.4f}{tv:>10.4f}{tv / max(tj, 1e-9):>9.1f}x  {same(oj, ov)}")


if __name__ == "__main__":
    main()
