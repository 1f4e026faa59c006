"""Replace (a, m) by a square-free a' and an enlarged modulus M = t*m.

The shift keeps the class a mod m reachable: a ≡ a' d^2 (mod m), so every
n ≡ a' (mod M) gives n d^2 ≡ a (mod m) with at least as many three-square
representations. The enlarged modulus makes p^2 | M for every prime p | a',
which is what the local congruence solver needs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .arith import factorize, nu_p, squarefree_decompose
from .errors import InternalContradiction, ModulusTooLargeForPipeline, NotRepresentable, PreconditionViolation
from .repcount import is_local_sum3

PIPELINE_MODULUS_CAP = 10**4

CASE_TAGS = (
    "r-odd",
    "r-even-s≤r",
    "r-even-s∈{r+1,r+2}",
    "r-even-s≥r+3",
    "a-zero-promoted",
)


@dataclass
class ReductionCertificate:
    a_in: int
    m_in: int
    a_prime: int
    d_scale: int  # in [1, m_in]
    t: int
    M: int
    case_tag: str
    details: dict = field(default_factory=dict)
    advisory: bool = False

    def check(self) -> None:
        """Re-verify every invariant; raises AssertionError on failure."""
        a, m, ap, d, M = self.a_in, self.m_in, self.a_prime, self.d_scale, self.M
        assert self.case_tag in CASE_TAGS
        assert 1 <= ap <= 5 * m, "a' out of [1, 5m]"
        assert all(e == 1 for _, e in factorize(ap)), "a' not square-free"
        assert (a - ap * d * d) % m == 0, "a ≢ a' d^2 (mod m)"
        assert M == self.t * m and self.t >= 7 or (self.t == 1 and M == m)
        assert ap < M or M == 1
        for p, _ in factorize(ap):
            assert M % (p * p) == 0 or self.t == 1, f"{p}^2 does not divide M"
        assert is_local_sum3(ap, M), "a' is not a sum of three squares mod M"


def _odd_part(n: int) -> tuple[int, int]:
    r = nu_p(n, 2)
    return r, n >> r


def _from_odd(odd: int, r: int, m: int) -> tuple[int, int]:
    # 2^r * odd with r even: a' is the square-free part of odd, d = d2 * 2^(r/2)
    d1, d2 = squarefree_decompose(odd)
    return d1, (d2 << (r // 2)) % m or m


def squarefree_shift(a: int, m: int) -> tuple[int, int, str, dict]:
    """Return ``(a_prime, d_scale, case_tag, details)`` for the class a mod m."""
    if m < 1:
        raise PreconditionViolation(f"modulus must be >= 1, got {m}")
    a %= m
    if not is_local_sum3(a, m):
        raise NotRepresentable(f"{a} is not a sum of three squares mod {m}")

    if a == 0:
        # 0 ≡ 1 * m^2 (mod m); 1 is a sum of three squares modulo anything
        ap, d, tag, details = 1, m, "a-zero-promoted", {}
    else:
        r, a0 = _odd_part(a)
        s, m0 = _odd_part(m)
        details = {"r": r, "s": s, "a0": a0, "m0": m0}
        if r % 2 == 1:
            d1, d2 = squarefree_decompose(a)
            ap, d, tag = d1, d2 % m or m, "r-odd"
        elif s >= r + 3:
            d1, d2 = squarefree_decompose(a)
            if d1 % 8 == 7:
                raise InternalContradiction(f"odd square-free part of {a} is 7 mod 8")
            ap, d, tag = d1, d2 % m or m, "r-even-s≥r+3"
        elif s <= r:
            tag = "r-even-s≤r"
            # odd parts a0 + 2*l*m0; l = 0 is a itself
            for l in (0, 1, 2):
                odd = a0 + 2 * l * m0
                if (l == 0 and odd % 8 != 7) or (l > 0 and odd % 4 == 1):
                    break
            else:  # pragma: no cover - a0+2m0, a0+4m0 differ mod 4
                raise InternalContradiction("no admissible shift")
            details["l"] = l
            ap, d = _from_odd(odd, r, m)
        else:
            tag = "r-even-s∈{r+1,r+2}"
            # a, a + m, a + 2m; the last two have odd parts distinct mod 8
            for k in (0, 1, 2):
                _, odd = _odd_part(a + k * m)
                if odd % 8 != 7:
                    break
            else:  # pragma: no cover
                raise InternalContradiction("no admissible shift")
            details["k"] = k
            ap, d = _from_odd(odd, r, m)

    if not (1 <= ap <= 5 * m) or (a - ap * d * d) % m:
        raise InternalContradiction(f"shift of ({a}, {m}) produced a' = {ap}, d = {d}")
    if not is_local_sum3(ap, m):
        raise InternalContradiction(f"a' = {ap} is not a sum of three squares mod {m}")
    return ap, d, tag, details


def t_multiplier(a_prime: int, m: int) -> tuple[int, int]:
    """(t, M) with M = 7 * prod_{p | a'} p^max(2, v_p(m)) * prod_{p | m, p ∤ a'} p^v_p(m)."""
    ap_primes = {p for p, _ in factorize(a_prime)}
    m_exp = dict(factorize(m).factors)
    M = 7
    for p in ap_primes:
        M *= p ** max(2, m_exp.get(p, 0))
    for p, e in m_exp.items():
        if p not in ap_primes:
            M *= p**e
    if M % m:
        raise InternalContradiction(f"{m} does not divide M = {M}")
    return M // m, M


def reduce_full(a: int, m: int, modulus_cap: int = PIPELINE_MODULUS_CAP) -> ReductionCertificate:
    ap, d, tag, details = squarefree_shift(a, m)
    t, M = t_multiplier(ap, m)
    cert = ReductionCertificate(a % m, m, ap, d, t, M, tag, details)
    if ap >= M or any(M % (p * p) for p, _ in factorize(ap)):
        raise InternalContradiction(f"t-multiplier failed for a' = {ap}, M = {M}")
    if not is_local_sum3(ap, M):
        raise InternalContradiction(f"a' = {ap} is not a sum of three squares mod {M}")
    if M > modulus_cap:
        cert.advisory = True
        warnings.warn(
            f"enlarged modulus M = {M} exceeds the pipeline cap {modulus_cap}",
            ModulusTooLargeForPipeline,
            stacklevel=2,
        )
    return cert


def identity_certificate(a: int, m: int) -> ReductionCertificate:
    """Certificate with t = 1, d = 1 for inputs already meeting the solver's needs.

    Requires a square-free, and p^2 | m for every prime p dividing both a and m.
    """
    a %= m
    if a == 0:
        raise PreconditionViolation("a must be nonzero mod m")
    if any(e > 1 for _, e in factorize(a)):
        raise PreconditionViolation(f"a = {a} is not square-free")
    for p, _ in factorize(a):
        if m % p == 0 and m % (p * p):
            raise PreconditionViolation(f"{p} divides a and m but {p}^2 does not divide m")
    if not is_local_sum3(a, m):
        raise NotRepresentable(f"{a} is not a sum of three squares mod {m}")
    return ReductionCertificate(a, m, a, 1, 1, m, "r-odd" if a % 2 == 0 else "r-even-s≤r", {"skip": True})
