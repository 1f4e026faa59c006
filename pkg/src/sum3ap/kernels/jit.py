"""numba-compiled counting kernels.

Every function here has a twin of the same name and signature in
``vec.py``; results must agree bit for bit.
"""

import itertools
import math

import numpy as np
from numba import njit

_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def _isqrt(v):
    if v <= 0:
        return 0
    r = np.int64(math.sqrt(float(v)))
    while r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


@njit(**_opts)
def _powmod(b, e, m):
    result = 1
    b %= m
    while e > 0:
        if e & 1:
            result = result * b % m
        b = b * b % m
        e >>= 1
    return result


@njit(**_opts)
def _sqrt_mod_p(a, p):
    # p odd prime, a a nonzero quadratic residue mod p
    if p % 4 == 3:
        return _powmod(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _powmod(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = _powmod(z, q, p)
    x = _powmod(a, (q + 1) // 2, p)
    t = _powmod(a, q, p)
    m = s
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = b * b % p
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


@njit(**_opts)
def r2_table(X):
    out = np.zeros(X + 1, dtype=np.int32)
    R = _isqrt(X)
    for a in range(-R, R + 1):
        a2 = a * a
        B = _isqrt(X - a2)
        for b in range(-B, B + 1):
            out[a2 + b * b] += 1
    return out


@njit(**_opts)
def r3_two_loop(n):
    """Brute-force r3(n) over 0 <= a <= b <= c, weighted by signs and orderings.

    c is walked down as b grows, so there is no square root in the inner loop.
    """
    if n == 0:
        return np.int64(1)
    total = np.int64(0)
    a = 0
    while 3 * a * a <= n:
        rem_a = n - a * a
        c = _isqrt(rem_a - a * a)
        b = a
        while 2 * b * b <= rem_a:
            rem = rem_a - b * b
            while c * c > rem:
                c -= 1
            if c * c == rem:
                if a == c:
                    perms = 1
                elif a == b or b == c:
                    perms = 3
                else:
                    perms = 6
                nz = (a > 0) + (b > 0) + (c > 0)
                total += perms << nz
            b += 1
        a += 1
    return total


@njit(**_opts)
def r3_sieve(n, primes):
    """r3(n) = sum_k r2(n - k^2), factoring all n - k^2 at once by sieving.

    ``primes`` must contain every prime <= isqrt(n).
    """
    if n == 0:
        return np.int64(1)
    K = _isqrt(n)
    rem = np.empty(K + 1, dtype=np.int64)
    for k in range(K + 1):
        rem[k] = n - k * k
    mult = np.ones(K + 1, dtype=np.int64)
    bad = np.zeros(K + 1, dtype=np.bool_)
    for k in range(K + 1):
        if rem[k] > 0:
            while rem[k] % 2 == 0:
                rem[k] //= 2
    for i in range(primes.shape[0]):
        p = primes[i]
        if p == 2:
            continue
        if p > K and p * p > n:
            break
        t = n % p
        if t == 0:
            nroots = 1
            r0 = 0
            r1 = 0
        else:
            if _powmod(t, (p - 1) // 2, p) != 1:
                continue
            r0 = _sqrt_mod_p(t, p)
            r1 = p - r0
            nroots = 2
        for j in range(nroots):
            start = r0 if j == 0 else r1
            for k in range(start, K + 1, p):
                v = rem[k]
                if v == 0:
                    continue
                e = 0
                while v % p == 0:
                    v //= p
                    e += 1
                if e > 0:
                    rem[k] = v
                    if p % 4 == 1:
                        mult[k] *= e + 1
                    elif e % 2 == 1:
                        bad[k] = True
    total = np.int64(0)
    for k in range(K + 1):
        w = 1 if k == 0 else 2
        if n - k * k == 0:
            total += w
            continue
        if bad[k]:
            continue
        v = rem[k]
        if v > 1:
            if v % 4 == 3:
                continue
            total += w * 4 * mult[k] * 2
        else:
            total += w * 4 * mult[k]
    return total


@njit(**_opts)
def r4_mitm(n, r2):
    total = np.int64(0)
    for s in range(n + 1):
        total += np.int64(r2[s]) * np.int64(r2[n - s])
    return total


@njit(**_opts)
def _root_table(m):
    # CSR: roots[off[u]:off[u+1]] are the c in [0, m) with c^2 ≡ u (mod m)
    cnt = np.zeros(m + 1, dtype=np.int64)
    for c in range(m):
        cnt[c * c % m + 1] += 1
    off = np.cumsum(cnt)
    roots = np.empty(m, dtype=np.int64)
    fill = off[:-1].copy()
    for c in range(m):
        u = c * c % m
        roots[fill[u]] = c
        fill[u] += 1
    return off, roots


@njit(**_opts)
def ball_sum(x, a, m):
    """Number of (i, j, k) with i^2+j^2+k^2 <= x and i^2+j^2+k^2 ≡ a (mod m)."""
    off, roots = _root_table(m)
    a %= m
    total = np.int64(0)
    R = _isqrt(x)
    for i in range(-R, R + 1):
        i2 = i * i
        J = _isqrt(x - i2)
        for j in range(-J, J + 1):
            s = i2 + j * j
            C = _isqrt(x - s)
            if m == 1:
                total += 2 * C + 1
                continue
            u = (a - s) % m
            for t in range(off[u], off[u + 1]):
                rho = roots[t]
                # #{c in [-C, C] : c ≡ rho (mod m)}
                total += (C - rho) // m - (-C - 1 - rho) // m
    return total


@njit(**_opts)
def r3_progression(X, a, m, r2):
    """r3(n) for n = a, a+m, ... <= X (a reduced into [0, m)), via r3 = r1 * r2."""
    a %= m
    if a > X:
        return np.zeros(0, dtype=np.int64)
    count = (X - a) // m + 1
    out = np.zeros(count, dtype=np.int64)
    C = _isqrt(X)
    for c in range(C + 1):
        w = 1 if c == 0 else 2
        c2 = c * c
        j0 = 0
        if c2 > a:
            j0 = (c2 - a + m - 1) // m
        for j in range(j0, count):
            out[j] += w * r2[a + j * m - c2]
    return out


@njit(**_opts)
def _pair_csr(N, m, x1, x2):
    # pairs (k1, k2) with k1^2 + k2^2 <= N, bucketed by s = k1^2 + k2^2;
    # with x1 >= 0 only pairs with k1 ≡ x1, k2 ≡ x2 (mod m) are kept
    R = _isqrt(N)
    cnt = np.zeros(N + 2, dtype=np.int64)
    for k1 in range(-R, R + 1):
        if x1 >= 0 and (k1 - x1) % m != 0:
            continue
        B = _isqrt(N - k1 * k1)
        for k2 in range(-B, B + 1):
            if x1 >= 0 and (k2 - x2) % m != 0:
                continue
            cnt[k1 * k1 + k2 * k2 + 1] += 1
    off = np.cumsum(cnt)
    total = off[-1]
    first = np.empty(total, dtype=np.int64)
    second = np.empty(total, dtype=np.int64)
    fill = off[:-1].copy()
    for k1 in range(-R, R + 1):
        if x1 >= 0 and (k1 - x1) % m != 0:
            continue
        B = _isqrt(N - k1 * k1)
        for k2 in range(-B, B + 1):
            if x1 >= 0 and (k2 - x2) % m != 0:
                continue
            s = k1 * k1 + k2 * k2
            first[fill[s]] = k1
            second[fill[s]] = k2
            fill[s] += 1
    return off, first, second


@njit(**_opts)
def bucket_counts_dense(N, m):
    """Counts of four-square representations of N by residue class mod m.

    Index ``((r1*m + r2)*m + r3)*m + r4`` with r_i = k_i mod m in [0, m).
    """
    off, k1s, k2s = _pair_csr(N, m, -1, -1)
    codes = np.empty(k1s.shape[0], dtype=np.int64)
    for i in range(k1s.shape[0]):
        codes[i] = (k1s[i] % m) * m + (k2s[i] % m)
    mm = m * m
    acc = np.zeros(mm * mm, dtype=np.int64)
    for s in range(N + 1):
        t = N - s
        if off[s] == off[s + 1] or off[t] == off[t + 1]:
            continue
        for i in range(off[s], off[s + 1]):
            base = codes[i] * mm
            for j in range(off[t], off[t + 1]):
                acc[base + codes[j]] += 1
    return acc


@njit(**_opts)
def reps_in_class(N, m, x1, x2, x3, x4):
    """All (k1..k4) with sum of squares N and k ≡ x (mod m).

    Rows are ordered by (k1^2 + k2^2, k1, k2, k3, k4).
    """
    offa, a1, a2 = _pair_csr(N, m, x1 % m, x2 % m)
    offb, b1, b2 = _pair_csr(N, m, x3 % m, x4 % m)
    total = np.int64(0)
    for s in range(N + 1):
        total += (offa[s + 1] - offa[s]) * (offb[N - s + 1] - offb[N - s])
    out = np.empty((total, 4), dtype=np.int64)
    row = 0
    for s in range(N + 1):
        t = N - s
        for i in range(offa[s], offa[s + 1]):
            for j in range(offb[t], offb[t + 1]):
                out[row, 0] = a1[i]
                out[row, 1] = a2[i]
                out[row, 2] = b1[j]
                out[row, 3] = b2[j]
                row += 1
    return out


@njit(**_opts)
def _forms_pass(N, out, fill):
    Bmax = _isqrt(N // 3)
    par = N % 2
    count = 0
    for B in range(-Bmax, Bmax + 1):
        if (B - par) % 2 != 0:
            continue
        K = (B * B + N) // 4
        absb = B if B >= 0 else -B
        lo = absb if absb > 0 else 1
        for A in range(lo, _isqrt(K) + 1):
            if K % A != 0 or B == -A:
                continue
            C = K // A
            if A == C and B < 0:
                continue
            if fill:
                out[count, 0] = A
                out[count, 1] = B
                out[count, 2] = C
            count += 1
    return count


@njit(**_opts)
def reduced_forms(N):
    """Reduced forms (A, B, C) with B^2 - 4AC = -N; N ≡ 0, 3 (mod 4)."""
    out = np.empty((0, 3), dtype=np.int64)
    count = _forms_pass(N, out, False)
    out = np.empty((count, 3), dtype=np.int64)
    _forms_pass(N, out, True)
    return out


# -- local congruence solver ---------------------------------------------------
# Same constructions, tie-breaks and Newton iterates as the pure-Python solver
# in ``congsolve``; every residue stays below q < 2^31 so products fit in int64.

_PERMS = np.array(list(itertools.permutations(range(4))), dtype=np.int64)


@njit(**_opts)
def _inv(a, m):
    r0, r1 = a % m, m
    s0, s1 = 1, 0
    while r1:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    return s0 % m


@njit(**_opts)
def _small_sqrt(a, p):
    # smallest root mod p, or -1
    a %= p
    if a == 0:
        return 0
    if _powmod(a, (p - 1) // 2, p) != 1:
        return -1
    x = _sqrt_mod_p(a, p)
    return min(x, p - x)


@njit(**_opts)
def _newton(c, target, w, q):
    c %= q
    target %= q
    while True:
        f = (c * (w * w % q) - target) % q
        if f == 0:
            return w
        w = (w - f * _inv(2 * c * w % q, q)) % q


@njit(**_opts)
def _binary(a1, b1, d, p, q):
    # a1 u^2 + b1 v^2 ≡ d (mod q); returns (u, v, ok)
    inv_a = _inv(a1 % p, p)
    u = -1
    v = 0
    for vv in range(p):
        u = _small_sqrt((d - b1 * (vv * vv % p)) % p * inv_a, p)
        if u >= 0:
            v = vv
            break
    if u < 0:
        return 0, 0, False
    if u % p:
        u = _newton(a1, d - b1 * (v * v % q), u, q)
    else:
        v = _newton(b1, d - a1 * (u * u % q), v, q)
    return u % q, v % q, True


@njit(**_opts)
def _odd_branch(x1, x2, x3, x4, a, p, q, out):
    s13 = (x1 * x1 + x3 * x3) % q
    if s13 % p == 0:
        return False
    inv_x1 = _inv(x1, q)
    inv_s13 = _inv(s13, q)
    d = x1 * x1 % q
    t2 = (a - x2 * x2) % q
    t4 = (a - x4 * x4) % q
    if t2 % p:
        b = d * t2 % q * inv_s13 % q
        U, V, ok = _binary(s13, b, d, p, q)
        if not ok:
            return False
        y4 = V
        y3 = (U - x3 * x4 % q * inv_s13 % q * V) % q
        y1 = -((x3 * y3 + x4 * y4) % q) * inv_x1 % q
        out[0], out[1], out[2], out[3] = y1, 0, y3, y4
        return True
    if t4 % p:
        b = d * t4 % q * inv_s13 % q
        U, V, ok = _binary(s13, b, d, p, q)
        if not ok:
            return False
        y2 = V
        y3 = (U - x2 * x3 % q * inv_s13 % q * V) % q
        y1 = -((x2 * y2 + x3 * y3) % q) * inv_x1 % q
        out[0], out[1], out[2], out[3] = y1, y2, y3, 0
        return True
    if x4 % p == 0 or (x2 * x2 + x4 * x4) % p == 0:
        return False
    inv_x4 = _inv(x4, q)
    A1 = x4 * x4 % q * s13 % q
    B1 = d * ((x2 * x2 + x4 * x4) % q) % q
    D = d * (x4 * x4 % q) % q
    r, s, ok = _binary(A1, B1, D, p, q)
    if not ok:
        return False
    out[0] = -(r * x3 % q) * inv_x1 % q
    out[1] = s
    out[2] = r
    out[3] = -(s * x2 % q) * inv_x4 % q
    return True


@njit(**_opts)
def _check(x, y, q):
    n = 0
    dot = 0
    for j in range(4):
        n = (n + y[j] * y[j]) % q
        dot = (dot + x[j] * y[j]) % q
    return n == 1 % q and dot == 0


@njit(**_opts)
def _solve_odd(x, a, p, q, y):
    X = np.empty(4, dtype=np.int64)
    Y = np.empty(4, dtype=np.int64)
    for k in range(_PERMS.shape[0]):
        for i in range(4):
            X[i] = x[_PERMS[k, i]]
        if X[0] % p == 0:
            continue
        if _odd_branch(X[0], X[1], X[2], X[3], a, p, q, Y):
            for i in range(4):
                y[_PERMS[k, i]] = Y[i]
            return 0 if _check(x, y, q) else 2
    return 1


@njit(**_opts)
def _exhaustive(x, q, lo, hi, step, y):
    # lexicographically first y on the grid lo[j] + step[j]*t, t < hi[j]
    for i0 in range(hi[0]):
        y[0] = lo[0] + step[0] * i0
        for i1 in range(hi[1]):
            y[1] = lo[1] + step[1] * i1
            for i2 in range(hi[2]):
                y[2] = lo[2] + step[2] * i2
                for i3 in range(hi[3]):
                    y[3] = lo[3] + step[3] * i3
                    if _check(x, y, q):
                        return True
    return False


@njit(**_opts)
def _solve_two(x, e, q, y):
    if e <= 3:
        lo = np.zeros(4, dtype=np.int64)
        hi = np.full(4, q, dtype=np.int64)
        step = np.ones(4, dtype=np.int64)
        return 0 if _exhaustive(x, q, lo, hi, step, y) else 1
    val = np.empty(4, dtype=np.int64)
    for j in range(4):
        c = x[j] if x[j] else q
        v = 0
        while c % 2 == 0:
            c //= 2
            v += 1
        val[j] = v
    perm = np.argsort(val, kind="mergesort")
    X = np.empty(4, dtype=np.int64)
    for i in range(4):
        X[i] = x[perm[i]] if x[perm[i]] else q
    r4 = val[perm[3]]
    if val[perm[0]] != 0 or r4 < 1:
        return 3
    e0 = max(3, r4 + 1)
    Y = np.zeros(4, dtype=np.int64)
    if r4 >= 2:
        Y[0] = (1 << r4) % q
        Y[3] = 1
    else:
        lo = np.array([2, 0, 0, 1], dtype=np.int64)
        hi = np.array([2, 1, 8, 4], dtype=np.int64)
        step = np.array([4, 1, 1, 2], dtype=np.int64)
        Xm = X % 8
        if not _exhaustive(Xm, 8, lo, hi, step, Y):
            return 1
    for cur in range(e0, e):
        nxt = 1 << (cur + 1)
        half = 1 << cur
        u = 0
        v = 0
        for j in range(4):
            yj = Y[j] % nxt
            u = (u + yj * yj) % nxt
            v = (v + (X[j] % nxt) * yj) % nxt
        if (u != 1 and u != half + 1) or (v != 0 and v != half):
            return 1
        if u == 1:
            if v == half:
                Y[0] += half
        elif (v == 0) == (r4 >= 2):
            Y[3] += half // 2
        else:
            Y[0] += half
            Y[3] += half // 2
        for j in range(4):
            Y[j] %= q
    for i in range(4):
        y[perm[i]] = Y[i]
    return 0 if _check(x, y, q) else 2


@njit(**_opts)
def solve_prime_power(X, A, p, e):
    """Row-wise y with y·y ≡ 1, x·y ≡ 0 (mod p^e) for residues X in [0, p^e).

    Status per row: 0 ok, 1 construction failed, 2 result failed the check,
    3 x has no odd or no even entry (p = 2, e >= 4).
    """
    n = X.shape[0]
    q = 1
    for _ in range(e):
        q *= p
    Y = np.zeros((n, 4), dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    x = np.empty(4, dtype=np.int64)
    y = np.zeros(4, dtype=np.int64)
    for i in range(n):
        for j in range(4):
            x[j] = X[i, j] % q
            y[j] = 0
        if p == 2:
            st = _solve_two(x, e, q, y)
        else:
            st = _solve_odd(x, A[i] % q, p, q, y)
        status[i] = st
        for j in range(4):
            Y[i, j] = y[j] % q
    return Y, status
