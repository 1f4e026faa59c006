"""The numba kernels and their numpy twins must agree exactly."""

import numpy as np
import pytest

from sum3ap.arith import small_primes
from sum3ap.kernels import jit, vec

from oracles import r3_naive


@pytest.mark.parametrize("X", [0, 1, 2, 50, 1000])
def test_r2_table(X):
    assert np.array_equal(jit.r2_table(X), vec.r2_table(X))


@pytest.mark.parametrize("n", [0, 1, 3, 7, 68, 125, 999, 4096, 100_001])
def test_r3_kernels(n):
    a = jit.r3_two_loop(n)
    assert a == vec.r3_two_loop(n)
    ps = small_primes(int(np.sqrt(n)) + 2)
    assert jit.r3_sieve(n, ps) == a
    assert vec.r3_sieve(n, ps) == a
    if n <= 125:
        assert a == r3_naive(n)


def test_r3_sieve_sweep():
    ps = small_primes(200)
    for n in range(0, 3000):
        assert jit.r3_sieve(n, ps) == jit.r3_two_loop(n)


@pytest.mark.parametrize("n", [1, 4, 12, 70, 1000])
def test_r4_mitm(n):
    assert jit.r4_mitm(n, jit.r2_table(n)) == vec.r4_mitm(n, vec.r2_table(n))


@pytest.mark.parametrize("x,a,m", [(0, 0, 1), (100, 0, 1), (100, 1, 4), (2000, 2, 5), (5000, 3, 8)])
def test_ball_sum(x, a, m):
    assert jit.ball_sum(x, a, m) == vec.ball_sum(x, a, m)


@pytest.mark.parametrize("X,a,m", [(100, 1, 4), (1000, 0, 3), (997, 5, 7), (10, 11, 12)])
def test_r3_progression(X, a, m):
    got = jit.r3_progression(X, a, m, jit.r2_table(X))
    assert np.array_equal(got, vec.r3_progression(X, a, m, vec.r2_table(X)))
    want = [jit.r3_two_loop(n) for n in range(a % m, X + 1, m)]
    assert got.tolist() == want


@pytest.mark.parametrize("N,m", [(4, 2), (70, 3), (190, 5), (300, 4)])
def test_bucket_counts_dense(N, m):
    a, b = jit.bucket_counts_dense(N, m), vec.bucket_counts_dense(N, m)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("N,m,x", [(70, 3, (1, 1, 2, 2)), (70, 1, (0, 0, 0, 0)), (190, 21, (1, 2, 4, 8))])
def test_reps_in_class(N, m, x):
    a, b = jit.reps_in_class(N, m, *x), vec.reps_in_class(N, m, *x)
    assert np.array_equal(a, b)
    assert np.all((a * a).sum(axis=1) == N)
    assert np.all((a - np.array(x)) % m == 0)
    assert np.unique(a, axis=0).shape[0] == a.shape[0]


@pytest.mark.parametrize("N", [3, 4, 7, 8, 23, 100, 1003, 4000])
def test_reduced_forms(N):
    a, b = jit.reduced_forms(N), vec.reduced_forms(N)
    key = lambda arr: sorted(map(tuple, arr.tolist()))
    assert key(a) == key(b)


@pytest.mark.parametrize("q,p,e", [(9, 3, 2), (25, 5, 2), (7, 7, 1), (16, 2, 4), (8, 2, 3), (64, 2, 6)])
def test_solve_prime_power(q, p, e):
    rng = np.random.default_rng(q)
    X = rng.integers(0, q, size=(3000, 4))
    A = (X * X).sum(axis=1) % q
    keep = (X % p != 0).any(axis=1)
    if p == 2:
        keep &= (A % 4 != 0) & (A % 8 != 7)
    X, A = X[keep], A[keep]
    Y1, s1 = jit.solve_prime_power(X, A, p, e)
    Y2, s2 = vec.solve_prime_power(X, A, p, e)
    assert np.array_equal(Y1, Y2) and np.array_equal(s1, s2)
    assert np.all(s1 == 0)
    assert np.all((Y1 * Y1).sum(axis=1) % q == 1) and np.all((X * Y1).sum(axis=1) % q == 0)


def test_disable_numba_switch():
    import json
    import os
    import subprocess
    import sys

    code = "import json, sum3ap.kernels as k, sum3ap.repcount as r; print(json.dumps([k.BACKEND, r.r3_exact(10**6 + 1)]))"
    out = {}
    for flag in ("1", "0"):
        p = subprocess.run(
            [sys.executable, "-c", code],
            env={**os.environ, "SUM3AP_DISABLE_NUMBA": flag},
            capture_output=True,
            text=True,
            check=True,
        )
        out[flag] = json.loads(p.stdout)
    assert out["1"][0] == "numpy" and out["0"][0] == "numba"
    assert out["1"][1] == out["0"][1]
