"""Pure-numpy fallbacks for the kernels in ``jit.py`` (same names, same results).

Used when numba is disabled or unavailable. Loops run in Python over one
axis and vectorize the other, so these are much slower for large inputs.
"""

import math

import numpy as np


def _isqrt_vec(v):
    v = np.asarray(v, dtype=np.int64)
    r = np.floor(np.sqrt(np.maximum(v, 0).astype(np.float64))).astype(np.int64)
    r -= (r * r > v).astype(np.int64)
    r += ((r + 1) * (r + 1) <= v).astype(np.int64)
    return np.where(v > 0, r, 0)


def _disk(X):
    # all (a, b) with a^2 + b^2 <= X, ordered by a then b
    R = math.isqrt(X)
    a = np.arange(-R, R + 1, dtype=np.int64)
    B = _isqrt_vec(X - a * a)
    lens = 2 * B + 1
    aa = np.repeat(a, lens)
    starts = np.repeat(-B - np.concatenate(([0], np.cumsum(lens)[:-1])), lens)
    bb = np.arange(aa.shape[0], dtype=np.int64) + starts
    return aa, bb


def r2_table(X):
    a, b = _disk(X)
    return np.bincount(a * a + b * b, minlength=X + 1).astype(np.int32)


def r3_two_loop(n):
    if n == 0:
        return 1
    total = 0
    for a in range(math.isqrt(n) + 1):
        rem_a = n - a * a
        b = np.arange(math.isqrt(rem_a) + 1, dtype=np.int64)
        rem = rem_a - b * b
        c = _isqrt_vec(rem)
        hit = c * c == rem
        w = np.where(b[hit] == 0, 1, 2) * np.where(c[hit] == 0, 1, 2)
        total += (1 if a == 0 else 2) * int(w.sum())
    return total


def r3_sieve(n, primes):
    if n == 0:
        return 1
    K = math.isqrt(n)
    k = np.arange(K + 1, dtype=np.int64)
    rem = n - k * k
    mult = np.ones(K + 1, dtype=np.int64)
    bad = np.zeros(K + 1, dtype=bool)
    live = rem > 0
    tz = np.zeros(K + 1, dtype=np.int64)
    tz[live] = (rem[live] & -rem[live])
    rem[live] //= tz[live]
    for p in primes.tolist():
        if p == 2:
            continue
        if p > K:
            break
        t = n % p
        if t == 0:
            starts = [0]
        else:
            if pow(t, (p - 1) // 2, p) != 1:
                continue
            r0 = _sqrt_mod_prime(t, p)
            starts = [r0, p - r0]
        for start in starts:
            idx = np.arange(start, K + 1, p)
            idx = idx[rem[idx] != 0]
            e = np.zeros(idx.shape[0], dtype=np.int64)
            active = np.ones(idx.shape[0], dtype=bool)
            while active.any():
                pos = np.flatnonzero(active)
                div = rem[idx[pos]] % p == 0
                rem[idx[pos[div]]] //= p
                e[pos[div]] += 1
                active[pos[~div]] = False
            hit = e > 0
            if p % 4 == 1:
                mult[idx[hit]] *= e[hit] + 1
            else:
                bad[idx[hit & (e % 2 == 1)]] = True
    w = np.where(k == 0, 1, 2)
    zero = rem == 0
    total = int(w[zero].sum())
    ok = ~zero & ~bad & ~((rem > 1) & (rem % 4 == 3))
    big = np.where(rem > 1, 2, 1)
    total += int((w * 4 * mult * big)[ok].sum())
    return total


def _sqrt_mod_prime(a, p):
    from ..arith import sqrt_mod_prime

    return sqrt_mod_prime(a, p)


def r4_mitm(n, r2):
    r = r2[: n + 1].astype(np.int64)
    return int(np.dot(r, r[::-1]))


def ball_sum(x, a, m):
    a %= m
    R = math.isqrt(x)
    total = 0
    roots = [[] for _ in range(m)]
    for c in range(m):
        roots[c * c % m].append(c)
    for i in range(-R, R + 1):
        J = math.isqrt(x - i * i)
        j = np.arange(-J, J + 1, dtype=np.int64)
        s = i * i + j * j
        C = _isqrt_vec(x - s)
        if m == 1:
            total += int((2 * C + 1).sum())
            continue
        u = (a - s) % m
        for target in np.unique(u).tolist():
            sel = C[u == target]
            for rho in roots[target]:
                total += int(((sel - rho) // m - (-sel - 1 - rho) // m).sum())
    return total


def r3_progression(X, a, m, r2):
    a %= m
    if a > X:
        return np.zeros(0, dtype=np.int64)
    n = np.arange(a, X + 1, m, dtype=np.int64)
    out = np.zeros(n.shape[0], dtype=np.int64)
    r2 = r2.astype(np.int64)
    for c in range(math.isqrt(X) + 1):
        c2 = c * c
        j0 = 0 if c2 <= a else -(-(c2 - a) // m)
        out[j0:] += (1 if c == 0 else 2) * r2[n[j0:] - c2]
    return out


def _pairs_by_sum(N, m, x1, x2):
    a, b = _disk(N)
    if x1 >= 0:
        keep = ((a - x1) % m == 0) & ((b - x2) % m == 0)
        a, b = a[keep], b[keep]
    s = a * a + b * b
    order = np.argsort(s, kind="stable")
    a, b, s = a[order], b[order], s[order]
    off = np.concatenate(([0], np.cumsum(np.bincount(s, minlength=N + 1))))
    return off, a, b, s


def bucket_counts_dense(N, m, chunk=4096):
    off, a, b, s = _pairs_by_sum(N, m, -1, -1)
    mm = m * m
    codes = (a % m) * m + (b % m)
    acc = np.zeros((mm, mm), dtype=np.int64)
    for s0 in range(0, N + 1, chunk):
        s1 = min(s0 + chunk, N + 1)
        # H1[c, s - s0] for s in [s0, s1); H2[c, s - s0] counts pairs with sum N - s
        lo, hi = off[s0], off[s1]
        H1 = np.zeros((mm, s1 - s0), dtype=np.int64)
        np.add.at(H1, (codes[lo:hi], s[lo:hi] - s0), 1)
        lo2, hi2 = off[N - s1 + 1], off[N - s0 + 1]
        H2 = np.zeros((mm, s1 - s0), dtype=np.int64)
        np.add.at(H2, (codes[lo2:hi2], N - s[lo2:hi2] - s0), 1)
        acc += H1 @ H2.T
    return acc.reshape(-1)


def reps_in_class(N, m, x1, x2, x3, x4):
    offa, a1, a2, sa = _pairs_by_sum(N, m, x1 % m, x2 % m)
    offb, b1, b2, _ = _pairs_by_sum(N, m, x3 % m, x4 % m)
    cnt_b = np.diff(offb)
    reps = cnt_b[N - sa]
    total = int(reps.sum())
    ia = np.repeat(np.arange(sa.shape[0]), reps)
    first = np.repeat(offb[N - sa], reps)
    group_start = np.repeat(np.concatenate(([0], np.cumsum(reps)[:-1])), reps)
    ib = first + (np.arange(total) - group_start)
    out = np.empty((total, 4), dtype=np.int64)
    out[:, 0], out[:, 1] = a1[ia], a2[ia]
    out[:, 2], out[:, 3] = b1[ib], b2[ib]
    return out


def reduced_forms(N):
    rows = []
    Bmax = math.isqrt(N // 3)
    for B in range(-Bmax, Bmax + 1):
        if (B - N) % 2:
            continue
        K = (B * B + N) // 4
        A = np.arange(max(abs(B), 1), math.isqrt(K) + 1, dtype=np.int64)
        A = A[(K % A == 0) & (A != -B)]
        C = K // A
        keep = ~((A == C) & (B < 0))
        A, C = A[keep], C[keep]
        if A.shape[0]:
            rows.append(np.column_stack((A, np.full(A.shape[0], B, dtype=np.int64), C)))
    if not rows:
        return np.empty((0, 3), dtype=np.int64)
    return np.concatenate(rows)


def solve_prime_power(X, A, p, e):
    # row loop over the pure-Python constructions
    from ..congsolve import _odd_core, _two_core

    q = p**e
    n = X.shape[0]
    Y = np.zeros((n, 4), dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    for i in range(n):
        xs = [int(v) % q for v in X[i]]
        st, y = _two_core(xs, e) if p == 2 else _odd_core(xs, int(A[i]) % q, p, e)
        status[i] = st
        Y[i] = [v % q for v in y]
    return Y, status
