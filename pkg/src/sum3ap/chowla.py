"""Certified integers n ≡ a (mod m) with many representations as three squares.

Pipeline:

1. shift (a, m) to a square-free a' and an enlarged modulus M,
2. build N ≡ a' (mod M) as a multiple of a primorial, so r4(N) is large,
3. pick the residue class x* mod M holding the most four-square
   representations of N,
4. solve y·y ≡ 1, x*·y ≡ 0 (mod M) and lift y to integers with Q = y·y,
5. push every representation k of N in class x* through Euler's four-square
   matrix S(y). The images represent N*Q, their first coordinate is a
   multiple of M, and S is injective,
6. the most popular first coordinate k* leaves that many distinct
   three-square representations of N*Q - k*^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .arith import mod_inverse, nu_p, primorial_excluding
from .classnum import hurwitz_twelve
from .congsolve import CongruenceSolution, solve_mod_m
from .errors import (
    EmptyBuckets,
    InternalContradiction,
    ModulusTooLargeForPipeline,
    PreconditionViolation,
    TooLarge,
)
from .reduction import (
    PIPELINE_MODULUS_CAP,
    ReductionCertificate,
    identity_certificate,
    reduce_full,
)
from .repcount import (
    BUCKET_CAP,
    BUCKET_MODULUS_CAP,
    R3_CAP,
    R3_SIEVE_CAP,
    ResidueVec4,
    is_local_sum3,
    legendre_is_sum3,
    r3_exact,
    r4_buckets,
    r4_buckets_sparse,
    r4_jacobi,
)


@dataclass
class ChowlaWitness:
    a: int
    m: int
    certificate: ReductionCertificate
    z: int
    primes: tuple[int, ...]
    N1: int
    d_inv: int
    N: int
    r4N: int
    x_star: ResidueVec4
    bucket_count: int
    y: CongruenceSolution
    y_int: tuple[int, int, int, int]
    Q: int
    k_star: int
    n_local: int
    certified_count: int
    K: int
    pigeonhole_bound: int
    n_final: int
    euler_product: Fraction
    r3_exact: int | None = None
    triples: np.ndarray | None = field(default=None, repr=False)

    @property
    def M(self) -> int:
        return self.certificate.M

    def check(self) -> None:
        """Re-verify the witness invariants; raises AssertionError."""
        M, ap = self.M, self.certificate.a_prime
        assert self.N % M == ap % M and math.gcd(self.N1, M) == 1
        assert self.r4N == r4_jacobi(self.N)
        assert self.bucket_count * M**4 >= self.r4N
        assert self.Q % M == 1 % M and self.k_star % M == 0
        assert self.k_star**2 <= self.N * self.Q
        assert self.n_local == self.N * self.Q - self.k_star**2
        assert (self.n_local - ap) % M == 0
        assert (self.n_final - self.a) % self.m == 0
        assert self.n_final == self.n_local * self.certificate.d_scale**2
        assert self.K == 2 * (math.isqrt(self.N * self.Q) // M) + 1
        assert self.pigeonhole_bound == -(-self.r4N // (M**4 * self.K))
        assert self.certified_count >= self.pigeonhole_bound >= 1
        if self.r3_exact is not None:
            assert self.r3_exact >= self.certified_count

    def to_record(self) -> dict:
        """Flat record; integers become decimal strings."""
        c = self.certificate
        rec = {
            "a": self.a,
            "m": self.m,
            "z": self.z,
            "a_prime": c.a_prime,
            "d_scale": c.d_scale,
            "t": c.t,
            "M": c.M,
            "case_tag": c.case_tag,
            "advisory": c.advisory,
            "primes": list(self.primes),
            "N1": self.N1,
            "d_inv": self.d_inv,
            "N": self.N,
            "r4N": self.r4N,
            "x_star": list(self.x_star.residues()),
            "bucket_count": self.bucket_count,
            "y": list(self.y_int),
            "Q": self.Q,
            "k_star": self.k_star,
            "n_local": self.n_local,
            "certified_count": self.certified_count,
            "K": self.K,
            "pigeonhole_bound": self.pigeonhole_bound,
            "r3_exact": self.r3_exact,
            "n_final": self.n_final,
            "euler_product": str(self.euler_product),
        }
        return _stringify(rec)


def _stringify(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, float):
        return obj
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    return str(obj)


def build_N(a_prime: int, M: int, z: int) -> tuple[int, int, int]:
    """(N1, d_inv, N) with N1 the product of the primes <= z not dividing M."""
    if M < 2:
        raise PreconditionViolation(f"M must be >= 2, got {M}")
    if not 1 <= a_prime < M:
        raise PreconditionViolation(f"a' = {a_prime} outside [1, {M})")
    if z < 2:
        raise PreconditionViolation(f"z must be >= 2, got {z}")
    _, N1 = primorial_excluding(z, M)
    d_inv = mod_inverse(N1, M)
    return N1, d_inv, a_prime * d_inv * N1


def euler_transform(y, k):
    """S(y) k for one 4-vector or an (n, 4) array of them.

    The first row is y itself, so the first output coordinate is y·k, and
    |S(y) k|^2 = |y|^2 |k|^2.
    """
    y1, y2, y3, y4 = (int(v) for v in y)
    if isinstance(k, np.ndarray) and k.ndim == 2:
        S = np.array(
            [[y1, y2, y3, y4], [-y2, y1, -y4, y3], [-y3, y4, y1, -y2], [-y4, -y3, y2, y1]],
            dtype=np.int64,
        )
        return k @ S.T
    k1, k2, k3, k4 = (int(v) for v in k)
    return (
        y1 * k1 + y2 * k2 + y3 * k3 + y4 * k4,
        -y2 * k1 + y1 * k2 - y4 * k3 + y3 * k4,
        -y3 * k1 + y4 * k2 + y1 * k3 - y2 * k4,
        -y4 * k1 - y3 * k2 + y2 * k3 + y1 * k4,
    )


def select_bucket(
    N: int,
    M: int,
    a_prime: int | None = None,
    cap: int = BUCKET_CAP,
    dense_modulus_cap: int = BUCKET_MODULUS_CAP,
) -> tuple[ResidueVec4, int, int]:
    """(x_star, bucket_count, r4N) for the heaviest class of representations of N mod M."""
    if a_prime is not None and (N - a_prime) % M:
        raise PreconditionViolation(f"N = {N} is not ≡ {a_prime} (mod {M})")
    if M <= dense_modulus_cap:
        table = r4_buckets(N, M, cap, dense_modulus_cap)
    else:
        table = r4_buckets_sparse(N, M, cap)
    if not table.entries:
        raise EmptyBuckets(f"no four-square representations of {N}")
    x_star, count = table.heaviest()
    return x_star, count, table.total


def _pick_k(first: np.ndarray) -> tuple[int, int]:
    ks, counts = np.unique(first, return_counts=True)
    # most members, then smallest |k|, then the positive one
    order = np.lexsort((-ks, np.abs(ks), -counts))
    i = order[0]
    return int(ks[i]), int(counts[i])


def extract_witness(
    a: int,
    m: int,
    z: int = 7,
    skip_reduction: bool = False,
    verify_exact: bool = False,
    modulus_cap: int = PIPELINE_MODULUS_CAP,
    bucket_cap: int = BUCKET_CAP,
    r3_cap: int = R3_CAP,
    sieve_cap: int = R3_SIEVE_CAP,
    keep_triples: bool = False,
) -> ChowlaWitness:
    if m < 1:
        raise PreconditionViolation(f"modulus must be >= 1, got {m}")
    if z < 2:
        raise PreconditionViolation(f"z must be >= 2, got {z}")
    a %= m

    if skip_reduction:
        if m == 1:
            cert = ReductionCertificate(0, 1, 1, 1, 1, 1, "a-zero-promoted", {"skip": True})
        else:
            cert = identity_certificate(a, m)
            if m % 4 == 0 and a % 4 == 0:
                raise PreconditionViolation(f"4 divides a = {a}")
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ModulusTooLargeForPipeline)
            cert = reduce_full(a, m, modulus_cap)
    M, ap = cert.M, cert.a_prime
    if M > modulus_cap:
        raise TooLarge(f"enlarged modulus M = {M} exceeds the pipeline cap {modulus_cap}")

    if M == 1:
        primes, N1 = primorial_excluding(z, 1)
        d_inv, N = 1, N1
    else:
        primes, _ = primorial_excluding(z, M)
        N1, d_inv, N = build_N(ap % M, M, z)
    if N > bucket_cap:
        raise TooLarge(f"N = {N} exceeds the bucket cap {bucket_cap}")

    x_star, bucket_count, r4N = select_bucket(N, M, ap % M, bucket_cap)
    if r4N != r4_jacobi(N):
        raise InternalContradiction(f"bucket total {r4N} disagrees with r4({N})")

    if M == 1:
        y = CongruenceSolution(ResidueVec4((1, 1, 1, 1), 1), 1, 1)
    else:
        y = solve_mod_m(x_star, ap, M)
    y_int = y.centered()
    Q = sum(v * v for v in y_int)

    reps = kernels.reps_in_class(N, M, *x_star.residues())
    if reps.shape[0] != bucket_count:
        raise InternalContradiction("re-enumerated bucket has the wrong size")
    img = euler_transform(y_int, reps)
    if np.any(img[:, 0] % M) or np.any((img * img).sum(axis=1) != N * Q):
        raise InternalContradiction("Euler transform broke divisibility or the norm")

    k_star, certified = _pick_k(img[:, 0])
    triples = img[img[:, 0] == k_star, 1:]
    if np.unique(triples, axis=0).shape[0] != certified:
        raise InternalContradiction("transformed tuples are not distinct")

    n_local = N * Q - k_star * k_star
    K = 2 * (math.isqrt(N * Q) // M) + 1
    bound = -(-r4N // (M**4 * K))
    n_final = n_local * cert.d_scale**2
    euler = math.prod((Fraction(p + 1, p) for p in primes), start=Fraction(1))

    w = ChowlaWitness(
        a=a, m=m, certificate=cert, z=z, primes=tuple(primes), N1=N1, d_inv=d_inv,
        N=N, r4N=r4N, x_star=x_star, bucket_count=bucket_count, y=y, y_int=y_int,
        Q=Q, k_star=k_star, n_local=n_local, certified_count=certified, K=K,
        pigeonhole_bound=bound, n_final=n_final, euler_product=euler,
        triples=triples if keep_triples else None,
    )
    if verify_exact:
        w.r3_exact = r3_exact(n_local, r3_cap, sieve_cap)
        if w.r3_exact < certified:
            raise InternalContradiction(f"r3({n_local}) = {w.r3_exact} < certified {certified}")
    try:
        w.check()
    except AssertionError as exc:
        raise InternalContradiction(f"witness invariant failed: {exc}") from exc
    return w


def hurwitz_witness(a: int, m: int, z: int = 7, **opts) -> tuple[ChowlaWitness, Fraction]:
    """Witness n ≡ a (mod m) with 4 ∤ n, n ≢ 7 (mod 8), and a lower bound for H.

    The bound is on H(n) when n ≡ 3 (mod 8) and on H(4n) when n ≡ 1, 2 (mod 4).
    """
    if m < 1:
        raise PreconditionViolation(f"modulus must be >= 1, got {m}")
    a %= m
    s = nu_p(m, 2)
    if s >= 2:
        if a % 4 == 0:
            raise PreconditionViolation(f"4 divides both m = {m} and a = {a}")
        w = extract_witness(a, m, z, **opts)
    else:
        # steer into a class mod 4m that is 1, 2, 3, 5 or 6 mod 8
        b = a if a % 4 else a + m
        step = 4 * (m >> s)
        for cand in (b, b + step):
            if legendre_is_sum3(cand) and is_local_sum3(cand, 4 * m):
                break
        else:  # pragma: no cover - the two candidates differ mod 8
            raise InternalContradiction(f"no admissible lift of {a} mod {4 * m}")
        w = extract_witness(cand, 4 * m, z, **opts)
        w.a, w.m = a, m
    n = w.n_final
    if n % 4 == 0 or n % 8 == 7:
        raise InternalContradiction(f"witness {n} is not in an admissible class")
    h_bound = Fraction(w.certified_count, 24 if n % 8 == 3 else 12)
    return w, h_bound


def hurwitz_value_for(n: int) -> Fraction:
    """H(n) for n ≡ 3 (mod 8), H(4n) for n ≡ 1, 2 (mod 4)."""
    return hurwitz_twelve(n if n % 8 == 3 else 4 * n).H


def lower_bound_report(w: ChowlaWitness) -> dict:
    M = w.M
    NQ = w.N * w.Q
    display = w.r4N / ((2 * math.sqrt(NQ) + 1) * M**3)
    return {
        "M": M,
        "K": w.K,
        "bucket_count": w.bucket_count,
        "bucket_floor": -(-w.r4N // M**4),
        "certified_count": w.certified_count,
        "pigeonhole_bound": w.pigeonhole_bound,
        "display_bound": display,
        "holds_exact": w.certified_count >= w.pigeonhole_bound,
        "r4N_over_8N": w.r4N / (8 * w.N),
        "euler_product": float(w.euler_product),
        "certified_over_sqrt_n": w.certified_count / math.sqrt(w.n_final),
        "empty_prime_set": len(w.primes) == 0,
    }
