"""Solve  y·y ≡ 1  and  x·y ≡ 0  (mod m)  for a given x with x·x ≡ a (mod m).

The modulus is split into prime powers. Powers of 2 are handled by a short
exhaustive search followed by an explicit lifting induction. Odd prime
powers reduce to a diagonal binary form a1 u^2 + b1 v^2 ≡ d, solved mod p
and Hensel-lifted. The local answers are glued with the CRT.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .arith import crt_combine, factorize, is_prime, nu_p, sqrt_mod_prime
from .errors import (
    InternalContradiction,
    ModulusMismatch,
    PreconditionViolation,
    TooLarge,
)
from .repcount import ResidueVec4

BINARY_FORM_CAP = 10**9
KERNEL_MODULUS_LIMIT = 2**30  # keeps every product of residues inside int64


@dataclass(frozen=True)
class CongruenceSolution:
    y: ResidueVec4
    modulus: int
    Q: int  # sum of y_j^2 with each y_j lifted to [0, modulus); 1 when modulus == 1

    def centered(self) -> tuple[int, int, int, int]:
        """Integer lift of y with every coordinate in (-m/2, m/2]."""
        m = self.modulus
        if m == 1:
            return (1, 0, 0, 0)
        out = []
        for r in self.y.residues():
            out.append(r - m if 2 * r > m else r)
        return tuple(out)


def _as_vec(x, modulus: int) -> ResidueVec4:
    if isinstance(x, ResidueVec4):
        if x.modulus != modulus:
            raise ModulusMismatch(f"vector is mod {x.modulus}, expected mod {modulus}")
        return x
    return ResidueVec4.from_residues(x, modulus)


def verify_solution(x: ResidueVec4, y: ResidueVec4, m: int | None = None) -> bool:
    if x.modulus != y.modulus or (m is not None and m != x.modulus):
        raise ModulusMismatch(
            f"moduli differ: x mod {x.modulus}, y mod {y.modulus}, m = {m}"
        )
    m = x.modulus
    norm = sum(v * v for v in y.coords)
    dot = sum(a * b for a, b in zip(x.coords, y.coords))
    return (norm - 1) % m == 0 and dot % m == 0


def _solution(y, modulus: int) -> CongruenceSolution:
    vec = ResidueVec4.from_residues(y, modulus)
    Q = 1 if modulus == 1 else sum(r * r for r in vec.residues())
    return CongruenceSolution(vec, modulus, Q)


# -- odd prime powers --------------------------------------------------------


def solve_binary_form(a1: int, b1: int, d: int, p: int, e: int) -> tuple[int, int]:
    """(u, v) in [0, p^e)^2 with a1 u^2 + b1 v^2 ≡ d (mod p^e)."""
    if p == 2 or not is_prime(p):
        raise PreconditionViolation(f"p must be an odd prime, got {p}")
    if e < 1:
        raise PreconditionViolation(f"exponent must be >= 1, got {e}")
    q = p**e
    if q > BINARY_FORM_CAP:
        raise TooLarge(f"p^e = {q} exceeds cap {BINARY_FORM_CAP}")
    for name, c in (("a1", a1), ("b1", b1), ("d", d)):
        if c % p == 0:
            raise PreconditionViolation(f"{name} = {c} is divisible by p = {p}")

    # every residue mod p is a value of the form, so this loop ends quickly
    inv_a = pow(a1, -1, p)
    for v in range(p):
        u = sqrt_mod_prime((d - b1 * v * v) * inv_a, p)
        if u is not None:
            break
    else:  # pragma: no cover
        raise InternalContradiction(f"{a1}u^2 + {b1}v^2 misses {d} mod {p}")

    # Newton on whichever coordinate has a unit partial derivative;
    # d ≢ 0 (mod p) rules out u ≡ v ≡ 0
    if u % p:
        u = _newton(a1, (d - b1 * v * v), u, p, q)
    else:
        v = _newton(b1, (d - a1 * u * u), v, p, q)
    u, v = u % q, v % q
    if (a1 * u * u + b1 * v * v - d) % q:
        raise InternalContradiction("Hensel lift failed")
    return u, v


def _newton(c: int, target: int, w: int, p: int, q: int) -> int:
    # lift a root of c*w^2 ≡ target from mod p to mod q; p ∤ 2cw
    while (c * w * w - target) % q:
        w = (w - (c * w * w - target) * pow(2 * c * w, -1, q)) % q
    return w


def _odd_branch(X, a: int, p: int, e: int, q: int):
    """Try the three constructions for one ordering X of x (p ∤ X[0]).

    Returns the y for this ordering, or None when none of them applies.
    """
    x1, x2, x3, x4 = X
    s13 = (x1 * x1 + x3 * x3) % q
    if s13 % p == 0:
        return None
    inv_x1 = pow(x1, -1, q)
    inv_s13 = pow(s13, -1, q)
    d = x1 * x1 % q

    if (a - x2 * x2) % p:
        # y2 = 0; complete the square in y3
        b = d * (a - x2 * x2) * inv_s13 % q
        U, V = solve_binary_form(s13, b, d, p, e)
        y4 = V
        y3 = (U - x3 * x4 * inv_s13 * V) % q
        y1 = -(x3 * y3 + x4 * y4) * inv_x1 % q
        return (y1, 0, y3, y4)

    if (a - x4 * x4) % p:
        # y4 = 0; complete the square in y3 against y2
        b = d * (a - x4 * x4) * inv_s13 % q
        U, V = solve_binary_form(s13, b, d, p, e)
        y2 = V
        y3 = (U - x2 * x3 * inv_s13 * V) % q
        y1 = -(x2 * y2 + x3 * y3) * inv_x1 % q
        return (y1, y2, y3, 0)

    # x2^2 ≡ x4^2 ≡ a (mod p): parametrize by (r, s)
    if x4 % p == 0 or (x2 * x2 + x4 * x4) % p == 0:
        return None
    inv_x4 = pow(x4, -1, q)
    r, s = solve_binary_form(
        x4 * x4 * s13 % q, d * (x2 * x2 + x4 * x4) % q, d * x4 * x4 % q, p, e
    )
    return (-r * x3 * inv_x1 % q, s, r, -s * x2 * inv_x4 % q)


def _odd_core(xs, a: int, p: int, e: int) -> tuple[int, list]:
    """Status and y for residues xs mod p^e; the status codes match the kernel's."""
    q = p**e
    for perm in itertools.permutations(range(4)):
        X = [xs[i] for i in perm]
        if X[0] % p == 0:
            continue
        Y = _odd_branch(X, a, p, e, q)
        if Y is None:
            continue
        y = [0] * 4
        for i, j in enumerate(perm):
            y[j] = Y[i] % q
        return (0 if _satisfies(xs, y, q) else 2), y
    return 1, [0] * 4


def _satisfies(xs, y, q) -> bool:
    return (sum(t * t for t in y) - 1) % q == 0 and sum(s * t for s, t in zip(xs, y)) % q == 0


def _run_core(xs, a: int, p: int, e: int) -> tuple[int, list]:
    q = p**e
    if q <= KERNEL_MODULUS_LIMIT:
        Y, st = kernels.solve_prime_power(
            np.array([xs], dtype=np.int64), np.array([a % q], dtype=np.int64), p, e
        )
        return int(st[0]), Y[0].tolist()
    return _two_core(xs, e) if p == 2 else _odd_core(xs, a, p, e)


def _raise_for(status: int, xs, q: int):
    if status == 1:
        raise InternalContradiction(f"no construction applies to x = {xs} mod {q}")
    if status == 2:
        raise InternalContradiction(f"construction for x = {xs} mod {q} failed the check")
    if status == 3:
        raise PreconditionViolation(f"x = {xs} needs both an odd and an even entry")


def solve_mod_pe_odd(x, a: int, p: int, e: int) -> CongruenceSolution:
    if p == 2 or not is_prime(p):
        raise PreconditionViolation(f"p must be an odd prime, got {p}")
    q = p**e
    xv = _as_vec(x, q)
    xs = xv.residues()
    if (sum(t * t for t in xs) - a) % q:
        raise PreconditionViolation(f"sum of x_j^2 is not ≡ {a} (mod {q})")
    if all(t % p == 0 for t in xs):
        raise PreconditionViolation(f"every x_j is divisible by p = {p}")
    status, y = _run_core(xs, a, p, e)
    _raise_for(status, xs, q)
    sol = _solution(y, q)
    if not verify_solution(xv, sol.y):
        raise InternalContradiction(f"construction for x = {xs} mod {q} failed")
    return sol


# -- powers of two -----------------------------------------------------------


def _exhaustive_2e(xs, q: int, shape=None):
    ranges = shape or [range(q)] * 4
    for y in itertools.product(*ranges):
        if (sum(t * t for t in y) - 1) % q == 0 and sum(
            s * t for s, t in zip(xs, y)
        ) % q == 0:
            return list(y)
    return None


def solve_mod_2e(x, a: int, e: int) -> CongruenceSolution:
    if e < 1:
        raise PreconditionViolation(f"exponent must be >= 1, got {e}")
    q = 2**e
    xv = _as_vec(x, q)
    xs = xv.residues()
    if (sum(t * t for t in xs) - a) % q:
        raise PreconditionViolation(f"sum of x_j^2 is not ≡ {a} (mod {q})")
    if all(t % 2 == 0 for t in xs):
        raise PreconditionViolation("every x_j is even")
    if e >= 2 and a % 4 == 0:
        raise PreconditionViolation(f"4 divides a = {a}")
    if e == 1 and a % 2 == 0:
        raise PreconditionViolation("a is even, which needs 4 | modulus")
    if e >= 3 and a % 8 == 7:
        # a = (x·y)^2 + three squares by Euler's identity, so no y can exist
        raise PreconditionViolation(f"a = {a} ≡ 7 (mod 8) is not a sum of three squares mod {q}")

    status, y = _run_core(xs, a, 2, e)
    _raise_for(status, xs, q)
    return _check2(xv, y, q)


def _two_core(xs, e: int) -> tuple[int, list]:
    """Status and y for residues xs mod 2^e; the status codes match the kernel's."""
    q = 2**e
    if e <= 3:
        y = _exhaustive_2e(xs, q)
        return (1, [0] * 4) if y is None else (0, y)

    # 2-adic valuations of the representatives in [1, q]
    reps = [c or q for c in xs]
    val = [nu_p(c, 2) for c in reps]
    perm = sorted(range(4), key=lambda j: (val[j], j))
    X = [reps[j] for j in perm]
    r4 = val[perm[3]]
    if val[perm[0]] != 0 or r4 < 1:
        return 3, [0] * 4

    e0 = max(3, r4 + 1)
    if r4 >= 2:
        Y = [2**r4, 0, 0, 1]
    else:
        # r4 = 1: find a start mod 8 of the required shape
        Y = _exhaustive_2e(X, 8, [(2, 6), (0,), range(8), (1, 3, 5, 7)])
        if Y is None:
            return 1, [0] * 4

    for cur in range(e0, e):
        nxt = 2 ** (cur + 1)
        half = 2**cur
        u = sum(t * t for t in Y) % nxt
        v = sum(s * t for s, t in zip(X, Y)) % nxt
        if u not in (1, half + 1) or v not in (0, half):
            return 1, [0] * 4
        if u == 1:
            if v == half:
                Y[0] += half
        elif (v == 0) == (r4 >= 2):
            Y[3] += half // 2
        else:
            Y[0] += half
            Y[3] += half // 2

    y = [0] * 4
    for i, j in enumerate(perm):
        y[j] = Y[i] % q
    return (0 if _satisfies(xs, y, q) else 2), y


def _check2(xv, y, q):
    sol = _solution(y, q)
    if not verify_solution(xv, sol.y):
        raise InternalContradiction(f"bad solution mod {q}")
    return sol


# -- general modulus ---------------------------------------------------------


def solve_mod_m(x, a: int, m: int) -> CongruenceSolution:
    if m < 1:
        raise PreconditionViolation(f"modulus must be >= 1, got {m}")
    if m == 1:
        return CongruenceSolution(ResidueVec4((1, 1, 1, 1), 1), 1, 1)
    xv = _as_vec(x, m)
    if (xv.norm() - a) % m:
        raise PreconditionViolation(f"sum of x_j^2 is not ≡ {a} (mod {m})")
    parts = []
    for p, e in factorize(m):
        q = p**e
        local = xv.reduce(q)
        if all(c % p == 0 for c in local.coords):
            raise PreconditionViolation(f"every x_j is divisible by the prime {p} | m")
        sol = solve_mod_2e(local, a, e) if p == 2 else solve_mod_pe_odd(local, a, p, e)
        parts.append((q, sol.y.residues()))
    y = [crt_combine([(res[j], q) for q, res in parts])[0] for j in range(4)]
    sol = _solution(y, m)
    if not verify_solution(xv, sol.y):
        raise InternalContradiction(f"CRT assembly mod {m} failed")
    return sol


def q_bound(m: int) -> int:
    return 4 * (m - 1) ** 2 + 1


__all__ = [
    "CongruenceSolution",
    "solve_binary_form",
    "solve_mod_2e",
    "solve_mod_pe_odd",
    "solve_mod_m",
    "verify_solution",
    "q_bound",
]
