"""Deterministic integer arithmetic: inverses, CRT, valuations, factoring, sieving."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ModuliNotCoprime, NotCoprime, PreconditionViolation, TooLarge

FACTOR_CAP = 10**12
SIEVE_CAP = 10**8

isqrt = math.isqrt


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ``((p, e), ...)`` with strictly increasing primes."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1 or not is_prime(p):
                raise PreconditionViolation(f"invalid factorization entry {(p, e)}")
            prev = p

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def prime_powers(self) -> list[tuple[int, int, int]]:
        """``(p, e, p**e)`` triples."""
        return [(p, e, p**e) for p, e in self.factors]

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)


def mod_inverse(x: int, m: int) -> int:
    if m < 2:
        raise PreconditionViolation(f"modulus must be >= 2, got {m}")
    if math.gcd(x, m) != 1:
        raise NotCoprime(f"gcd({x}, {m}) = {math.gcd(x, m)} != 1")
    return pow(x, -1, m)


def crt_combine(residues) -> tuple[int, int]:
    """Combine ``[(r_i, m_i), ...]`` with pairwise coprime moduli into ``(R, M)``."""
    R, M = 0, 1
    for r, mod in residues:
        if mod < 1:
            raise PreconditionViolation(f"modulus must be >= 1, got {mod}")
        if math.gcd(M, mod) != 1:
            raise ModuliNotCoprime(f"modulus {mod} shares a factor with {M}")
        # R + M*t ≡ r (mod mod)
        t = ((r - R) * pow(M, -1, mod)) % mod if mod > 1 else 0
        R += M * t
        M *= mod
        R %= M
    return R, M


def nu_p(n: int, p: int) -> int:
    """Exponent of the largest power of ``p`` dividing ``n`` (n >= 1)."""
    if n < 1:
        raise PreconditionViolation(f"nu_p needs n >= 1, got {n}")
    if p < 2:
        raise PreconditionViolation(f"nu_p needs a prime, got {p}")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def primes_upto(z: int, cap: int = SIEVE_CAP) -> list[int]:
    return _sieve(z, cap).tolist()


def _sieve(z: int, cap: int = SIEVE_CAP) -> np.ndarray:
    if z > cap:
        raise TooLarge(f"sieve bound {z} exceeds cap {cap}")
    if z < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(z + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(z) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


@lru_cache(maxsize=8)
def _cached_primes(bound: int) -> np.ndarray:
    arr = _sieve(bound, cap=max(bound, SIEVE_CAP))
    arr.setflags(write=False)
    return arr


def small_primes(bound: int) -> np.ndarray:
    """Read-only array of primes <= bound; cached, sized up to the next power of two."""
    size = 1 << max(10, (max(bound, 2) - 1).bit_length())
    arr = _cached_primes(size)
    return arr[: np.searchsorted(arr, bound, side="right")]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    if n < 289:
        return True
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, cap: int = FACTOR_CAP) -> Factorization:
    if n < 1:
        raise PreconditionViolation(f"factorize needs n >= 1, got {n}")
    if n > cap:
        raise TooLarge(f"{n} exceeds factoring cap {cap}")
    factors = []
    for p in small_primes(isqrt(n)).tolist():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    if n > 1:
        factors.append((n, 1))
    return Factorization(tuple(factors))


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = d1 * d2**2`` with ``d1`` square-free."""
    d1, d2 = 1, 1
    for p, e in factorize(n):
        d1 *= p ** (e % 2)
        d2 *= p ** (e // 2)
    return d1, d2


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for _, e in factorize(n))


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Smallest ``x`` in ``[0, p)`` with ``x*x ≡ a (mod p)``, or None (Tonelli-Shanks)."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        c, x, t, m = pow(z, q, p), pow(a, (q + 1) // 2, p), pow(a, q, p), s
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            x, c, t, m = x * b % p, b * b % p, t * b * b % p, i
    return min(x, p - x)


def primorial_excluding(z: int, modulus: int) -> tuple[list[int], int]:
    """Primes <= z not dividing ``modulus`` and their product."""
    ps = [p for p in primes_upto(z) if modulus % p]
    return ps, math.prod(ps)
