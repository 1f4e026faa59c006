"""Hurwitz class numbers by enumerating reduced binary quadratic forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import NotADiscriminant, PreconditionViolation, TooLarge
from .repcount import R3_CAP, r3_bruteforce

FORMS_CAP = 10**9


@dataclass(frozen=True)
class ReducedForm:
    A: int
    B: int
    C: int

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def is_reduced(self) -> bool:
        A, B, C = self.A, self.B, self.C
        if not (A > 0 and C > 0 and -A < B <= A <= C):
            return False
        return not (A == C and B < 0)

    @property
    def weight12(self) -> int:
        """12 times the form's contribution to H."""
        if self.A == self.B == self.C:
            return 4
        if self.B == 0 and self.A == self.C:
            return 6
        return 12


@dataclass(frozen=True)
class HurwitzValue:
    N: int
    twelve_h: int

    @property
    def H(self) -> Fraction:
        return Fraction(self.twelve_h, 12)


def reduced_forms(N: int, cap: int = FORMS_CAP) -> list[ReducedForm]:
    """Every reduced form (primitive or not) of discriminant -N."""
    if N < 1:
        raise PreconditionViolation(f"N must be >= 1, got {N}")
    if N % 4 in (1, 2):
        raise NotADiscriminant(f"-{N} is not a discriminant (N ≡ {N % 4} mod 4)")
    if N > cap:
        raise TooLarge(f"form enumeration: {N} exceeds cap {cap}")
    return [ReducedForm(*map(int, row)) for row in kernels.reduced_forms(N)]


def hurwitz_twelve(N: int, cap: int = FORMS_CAP) -> HurwitzValue:
    if N < 1:
        raise PreconditionViolation(f"N must be >= 1, got {N}")
    if N % 4 in (1, 2):
        return HurwitzValue(N, 0)
    return HurwitzValue(N, sum(f.weight12 for f in reduced_forms(N, cap)))


def hurwitz_for_r3(n: int, cap: int = FORMS_CAP) -> tuple[HurwitzValue, int]:
    """The H value paired with r3(n) in Gauss's relation, and its multiplier.

    n ≡ 1, 2 (mod 4) uses H(4n) with multiplier 12; n ≡ 3 (mod 8) uses H(n)
    with multiplier 24.
    """
    if n % 4 in (1, 2):
        return hurwitz_twelve(4 * n, cap), 12
    if n % 8 == 3:
        return hurwitz_twelve(n, cap), 24
    raise PreconditionViolation(f"no class-number relation for n ≡ {n % 8} (mod 8)")


@dataclass
class GaussReport:
    n: int
    case: str
    r3: int
    rhs: int
    ok: bool
    twelve_h: int | None = None
    detail: str = ""


def gauss_relation_check(n: int, r3_cap: int = R3_CAP) -> GaussReport:
    """Check the case of Gauss's r3 / class-number relation that applies to n."""
    if n < 1:
        raise PreconditionViolation(f"n must be >= 1, got {n}")
    r3 = r3_bruteforce(n, r3_cap)
    if n % 4 in (1, 2):
        h = hurwitz_twelve(4 * n)
        rhs = h.twelve_h  # 12 * H(4n)
        case, twelve = "n≡1,2 mod 4: r3(n) = 12H(4n)", h.twelve_h
    elif n % 8 == 3:
        h = hurwitz_twelve(n)
        rhs = 2 * h.twelve_h  # 24 * H(n)
        case, twelve = "n≡3 mod 8: r3(n) = 24H(n)", h.twelve_h
    elif n % 8 == 7:
        rhs, case, twelve = 0, "n≡7 mod 8: r3(n) = 0", None
    else:
        rhs = r3_bruteforce(n // 4, r3_cap)
        case, twelve = "n≡0 mod 4: r3(n) = r3(n/4)", None
    ok = r3 == rhs
    detail = "" if ok else f"r3({n}) = {r3} but the relation predicts {rhs}"
    return GaussReport(n, case, r3, rhs, ok, twelve, detail)
