"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here imports the package under test.
"""

import itertools
import math


def r3_naive(n):
    R = math.isqrt(n)
    return sum(
        1
        for a in range(-R, R + 1)
        for b in range(-R, R + 1)
        for c in range(-R, R + 1)
        if a * a + b * b + c * c == n
    )


def r4_naive(n):
    R = math.isqrt(n)
    rng = range(-R, R + 1)
    return sum(1 for t in itertools.product(rng, repeat=4) if sum(v * v for v in t) == n)


def reps4(n):
    R = math.isqrt(n)
    rng = range(-R, R + 1)
    return [t for t in itertools.product(rng, repeat=4) if sum(v * v for v in t) == n]


def reps3(n):
    R = math.isqrt(n)
    rng = range(-R, R + 1)
    return [t for t in itertools.product(rng, repeat=3) if sum(v * v for v in t) == n]


def sigma_star_naive(n):
    return sum(d for d in range(1, n + 1) if n % d == 0 and d % 4)


def c_am_naive(a, m):
    return sum(
        1
        for x in itertools.product(range(m), repeat=3)
        if (sum(v * v for v in x) - a) % m == 0
    )


def forms_naive(N):
    """Reduced forms (A, B, C) with B^2 - 4AC = -N, by scanning A, B, C directly."""
    out = []
    for A in range(1, N + 1):
        if 3 * A * A > N:
            break
        for B in range(-A + 1, A + 1):
            num = B * B + N
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A or (A == C and B < 0):
                continue
            out.append((A, B, C))
    return out


def hurwitz_twelve_naive(N):
    if N % 4 in (1, 2):
        return 0
    total = 0
    for A, B, C in forms_naive(N):
        if A == B == C:
            total += 4
        elif B == 0 and A == C:
            total += 6
        else:
            total += 12
    return total


def is_sum3_naive(n):
    R = math.isqrt(n)
    for a in range(R + 1):
        for b in range(a, R + 1):
            c2 = n - a * a - b * b
            if c2 < 0:
                break
            if math.isqrt(c2) ** 2 == c2:
                return True
    return False


def ball_count_naive(x, a=0, m=1):
    R = math.isqrt(x)
    total = 0
    for i in range(-R, R + 1):
        for j in range(-R, R + 1):
            for k in range(-R, R + 1):
                s = i * i + j * j + k * k
                if s <= x and (s - a) % m == 0:
                    total += 1
    return total


def solutions_exist(x, m):
    """Whether some y mod m has y·y ≡ 1 and x·y ≡ 0 (mod m); exhaustive."""
    for y in itertools.product(range(m), repeat=4):
        if (sum(v * v for v in y) - 1) % m == 0 and sum(s * t for s, t in zip(x, y)) % m == 0:
            return True
    return False
