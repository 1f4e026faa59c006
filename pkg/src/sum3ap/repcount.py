"""Representation counts r3, r4 and their oracles.

Everything here returns exact Python integers. The heavy loops live in
:mod:`sum3ap.kernels`; this module validates inputs and enforces caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .arith import factorize, small_primes
from .errors import PreconditionViolation, TooLarge

R3_CAP = 10**9
R3_SIEVE_CAP = 10**14
R4_CAP = 10**7
CAM_CAP = 10**4
BUCKET_CAP = 10**7
BUCKET_MODULUS_CAP = 24
SUM_CAP = 10**7
SUM_STREAM_CAP = 10**8


@dataclass(frozen=True, order=True)
class ResidueVec4:
    """Four residues mod ``modulus``, each stored as a representative in [1, modulus].

    The representative ``modulus`` stands for residue 0.
    """

    coords: tuple[int, int, int, int]
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise PreconditionViolation(f"modulus must be >= 1, got {self.modulus}")
        if len(self.coords) != 4:
            raise PreconditionViolation("ResidueVec4 needs exactly four coordinates")
        for c in self.coords:
            if not 1 <= c <= self.modulus:
                raise PreconditionViolation(
                    f"coordinate {c} outside [1, {self.modulus}]"
                )

    @classmethod
    def from_residues(cls, values, modulus: int) -> "ResidueVec4":
        return cls(tuple(int(v) % modulus or modulus for v in values), modulus)

    def residues(self) -> tuple[int, ...]:
        """Coordinates reduced into [0, modulus)."""
        return tuple(c % self.modulus for c in self.coords)

    def norm(self) -> int:
        return sum(c * c for c in self.coords)

    def reduce(self, modulus: int) -> "ResidueVec4":
        if self.modulus % modulus:
            raise PreconditionViolation(f"{modulus} does not divide {self.modulus}")
        return ResidueVec4.from_residues(self.coords, modulus)

    def __iter__(self):
        return iter(self.coords)


@dataclass
class BucketTable:
    modulus: int
    total: int
    entries: dict[ResidueVec4, int] = field(default_factory=dict)

    def check(self, target: int) -> None:
        if sum(self.entries.values()) != self.total:
            raise AssertionError("bucket counts do not sum to the total")
        for key, count in self.entries.items():
            if count < 1:
                raise AssertionError(f"empty bucket stored for {key}")
            if (key.norm() - target) % self.modulus:
                raise AssertionError(f"bucket {key} has the wrong square sum")

    def heaviest(self) -> tuple[ResidueVec4, int]:
        """Maximal-count key; ties go to the lexicographically smallest key."""
        return min(self.entries.items(), key=lambda kv: (-kv[1], kv[0].coords))


def legendre_is_sum3(n: int) -> bool:
    """True iff ``n`` is not of the form 4^u (8v + 7)."""
    if n < 0:
        raise PreconditionViolation(f"n must be >= 0, got {n}")
    if n == 0:
        return True
    while n % 4 == 0:
        n //= 4
    return n % 8 != 7


def r3_bruteforce(n: int, cap: int = R3_CAP) -> int:
    if n < 0:
        raise PreconditionViolation(f"n must be >= 0, got {n}")
    if n > cap:
        raise TooLarge(f"r3 brute force: {n} exceeds cap {cap}")
    return int(kernels.r3_two_loop(n))


def r3_sieved(n: int, cap: int = R3_SIEVE_CAP) -> int:
    """Exact r3(n) by summing r2(n - k^2), factoring every n - k^2 with one sieve pass.

    O(sqrt(n) log log n); independent of :func:`r3_bruteforce`.
    """
    if n < 0:
        raise PreconditionViolation(f"n must be >= 0, got {n}")
    if n > cap:
        raise TooLarge(f"r3 sieve: {n} exceeds cap {cap}")
    return int(kernels.r3_sieve(n, small_primes(math.isqrt(n) + 1)))


def r3_exact(n: int, brute_cap: int = R3_CAP, cap: int = R3_SIEVE_CAP) -> int:
    """Brute force up to ``brute_cap``, the sieve above it."""
    if n <= brute_cap:
        return r3_bruteforce(n, brute_cap)
    return r3_sieved(n, cap)


def r4_bruteforce(n: int, cap: int = R4_CAP) -> int:
    """Counts signed ordered quadruples by pairing up two-square counts."""
    if n < 0:
        raise PreconditionViolation(f"n must be >= 0, got {n}")
    if n > cap:
        raise TooLarge(f"r4 brute force: {n} exceeds cap {cap}")
    return int(kernels.r4_mitm(n, kernels.r2_table(n)))


def sigma_star(n: int) -> int:
    """Sum of the divisors of ``n`` not divisible by 4."""
    if n < 1:
        raise PreconditionViolation(f"n must be >= 1, got {n}")
    total = 1
    for p, e in factorize(n):
        if p == 2:
            total *= 3  # 1 + 2; higher powers of 2 are divisible by 4
        else:
            total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def r4_jacobi(n: int) -> int:
    return 8 * sigma_star(n)


def _square_hist(m: int) -> np.ndarray:
    x = np.arange(m, dtype=np.int64)
    return np.bincount(x * x % m, minlength=m).astype(np.int64)


def c_am(a: int, m: int, cap: int = CAM_CAP) -> int:
    """Number of (x1, x2, x3) in (Z/m)^3 with x1^2 + x2^2 + x3^2 ≡ a (mod m)."""
    if m < 1:
        raise PreconditionViolation(f"modulus must be >= 1, got {m}")
    if m > cap:
        raise TooLarge(f"c_am: modulus {m} exceeds cap {cap}")
    h = _square_hist(m)
    two = np.zeros(m, dtype=np.int64)
    for r in np.flatnonzero(h).tolist():
        two += h[r] * np.roll(h, r)
    idx = (a - np.arange(m)) % m
    return int(np.dot(two, h[idx]))


def c_am_local(a: int, m: int, cap: int = CAM_CAP) -> int:
    """c_am via multiplicativity over the prime powers of ``m``.

    Only each prime power has to stay under ``cap``.
    """
    out = 1
    for p, e in factorize(m):
        out *= c_am(a, p**e, cap)
        if out == 0:
            return 0
    return out


def is_local_sum3(a: int, m: int) -> bool:
    """Whether a is a sum of three squares mod m.

    Every residue is one modulo an odd prime power, so only the 2-part of m
    matters: there the obstruction is a = 4^u (8v + 7) with 4^u (8v + 8) <= 2^s.
    """
    if m < 1:
        raise PreconditionViolation(f"modulus must be >= 1, got {m}")
    s = (m & -m).bit_length() - 1
    q = 1 << s
    a %= q
    if a == 0:
        return True
    u = 0
    while a % 4 == 0:
        a //= 4
        u += 1
    return a % 8 != 7 or (1 << (2 * u + 3)) > q


def r4_buckets(
    N: int, m: int, cap: int = BUCKET_CAP, modulus_cap: int = BUCKET_MODULUS_CAP
) -> BucketTable:
    """Four-square representations of N grouped by residue class mod m."""
    if N < 1 or m < 1:
        raise PreconditionViolation("r4_buckets needs N >= 1 and m >= 1")
    if N > cap:
        raise TooLarge(f"r4_buckets: N = {N} exceeds cap {cap}")
    if m > modulus_cap:
        raise TooLarge(f"r4_buckets: modulus {m} exceeds cap {modulus_cap}")
    acc = kernels.bucket_counts_dense(N, m)
    table = BucketTable(modulus=m, total=int(acc.sum()))
    for idx in np.flatnonzero(acc).tolist():
        r4_, rest = idx % m, idx // m
        r3_, rest = rest % m, rest // m
        r2_, r1_ = rest % m, rest // m
        key = ResidueVec4.from_residues((r1_, r2_, r3_, r4_), m)
        table.entries[key] = int(acc[idx])
    return table


def r4_buckets_sparse(N: int, m: int, cap: int = BUCKET_CAP) -> BucketTable:
    """Same table as :func:`r4_buckets`, built by listing every representation.

    Memory is O(r4(N)) but there is no m^4 accumulator, so any modulus works.
    """
    if N < 1 or m < 1:
        raise PreconditionViolation("r4_buckets needs N >= 1 and m >= 1")
    if N > cap:
        raise TooLarge(f"r4_buckets: N = {N} exceeds cap {cap}")
    reps = kernels.reps_in_class(N, 1, 0, 0, 0, 0) % m
    if m**4 < 2**62:
        # pack each residue tuple into one int64; 1-d unique is much faster
        codes = ((reps[:, 0] * m + reps[:, 1]) * m + reps[:, 2]) * m + reps[:, 3]
        packed, counts = np.unique(codes, return_counts=True)
        keys = np.empty((packed.shape[0], 4), dtype=np.int64)
        for j in range(3, -1, -1):
            keys[:, j] = packed % m
            packed = packed // m
    else:
        keys, counts = np.unique(reps, axis=0, return_counts=True)
    table = BucketTable(modulus=m, total=int(counts.sum()))
    for row, count in zip(keys.tolist(), counts.tolist()):
        table.entries[ResidueVec4.from_residues(row, m)] = int(count)
    return table


def sum_r3_upto(
    x: int,
    ap: tuple[int, int] | None = None,
    streaming: bool = False,
    cap: int = SUM_CAP,
    stream_cap: int = SUM_STREAM_CAP,
) -> int:
    """Sum of r3(n) over 0 <= n <= x, optionally only n ≡ a (mod m).

    One pass over the lattice points of the ball of radius sqrt(x); the last
    coordinate is counted in closed form per residue class.
    """
    if x < 0:
        return 0
    limit = stream_cap if streaming else cap
    if x > limit:
        raise TooLarge(f"sum_r3_upto: x = {x} exceeds cap {limit}")
    a, m = ap if ap is not None else (0, 1)
    if m < 1:
        raise PreconditionViolation(f"modulus must be >= 1, got {m}")
    return int(kernels.ball_sum(x, a % m, m))


def r3_along_progression(X: int, a: int, m: int, cap: int = SUM_CAP) -> np.ndarray:
    """Array of r3(n) for n = a mod m, a + m, ... <= X (starting at a mod m)."""
    if X > cap:
        raise TooLarge(f"progression bound {X} exceeds cap {cap}")
    if m < 1:
        raise PreconditionViolation(f"modulus must be >= 1, got {m}")
    return kernels.r3_progression(X, a % m, m, kernels.r2_table(X))


def sphere_main_term(x: float, ap: tuple[int, int] | None = None) -> float:
    """(4π/3) x^{3/2}, scaled by c_{a,m}/m^3 when restricted to a progression."""
    main = 4.0 * math.pi / 3.0 * x**1.5
    if ap is None:
        return main
    a, m = ap
    return main * c_am(a, m) / m**3
