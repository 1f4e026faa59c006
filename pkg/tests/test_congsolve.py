import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sum3ap.congsolve import (
    CongruenceSolution,
    q_bound,
    solve_binary_form,
    solve_mod_2e,
    solve_mod_m,
    solve_mod_pe_odd,
    verify_solution,
)
from sum3ap.errors import ModulusMismatch, PreconditionViolation, TooLarge
from sum3ap.repcount import ResidueVec4

from oracles import solutions_exist


def V(t, m):
    return ResidueVec4.from_residues(t, m)


def test_binary_form_examples():
    assert solve_binary_form(1, 1, 2, 3, 2) == (1, 1)
    assert solve_binary_form(1, 2, 1, 5, 1) == (1, 0)
    u, v = solve_binary_form(2, 3, 1, 7, 3)
    assert (2 * u * u + 3 * v * v - 1) % 343 == 0
    with pytest.raises(PreconditionViolation):
        solve_binary_form(3, 1, 1, 3, 1)
    with pytest.raises(PreconditionViolation):
        solve_binary_form(1, 1, 1, 2, 3)
    with pytest.raises(TooLarge):
        solve_binary_form(1, 1, 1, 101, 5)


@given(
    st.sampled_from([3, 5, 7, 11, 13, 101]),
    st.integers(1, 4),
    st.integers(1, 10**6),
    st.integers(1, 10**6),
    st.integers(1, 10**6),
)
@settings(max_examples=200, deadline=None)
def test_binary_form_property(p, e, a1, b1, d):
    if a1 % p == 0 or b1 % p == 0 or d % p == 0 or p**e > 10**9:
        return
    u, v = solve_binary_form(a1, b1, d, p, e)
    assert (a1 * u * u + b1 * v * v - d) % p**e == 0


def test_solve_mod_2e_examples():
    s = solve_mod_2e(V((1, 2, 2, 2), 4), 13, 2)
    assert s.y.residues() == (2, 0, 0, 1)
    assert verify_solution(V((1, 2, 2, 2), 4), s.y)
    s = solve_mod_2e(V((1, 2, 2, 2), 8), 5, 3)
    assert verify_solution(V((1, 2, 2, 2), 8), s.y)
    with pytest.raises(PreconditionViolation):
        solve_mod_2e(V((1, 1, 1, 1), 2), 0, 1)


def test_solve_mod_2e_rejects_seven_mod_eight():
    # no y exists at all, so this must be a precondition failure
    x = (1, 1, 1, 2)
    assert not solutions_exist(x, 8)
    with pytest.raises(PreconditionViolation):
        solve_mod_2e(V(x, 8), 7, 3)


def test_solve_mod_pe_odd_examples():
    s = solve_mod_pe_odd(V((1, 1, 1, 3), 3), 0, 3, 1)
    assert s.y.residues() == (0, 0, 0, 1)
    s = solve_mod_pe_odd(V((1, 1, 1, 1), 5), 4, 5, 1)
    assert verify_solution(V((1, 1, 1, 1), 5), s.y)
    x = V((1, 2, 3, 4), 49)
    s = solve_mod_pe_odd(x, 30, 7, 2)
    assert verify_solution(x, s.y)
    with pytest.raises(PreconditionViolation):
        solve_mod_pe_odd(V((3, 3, 3, 3), 9), 0, 3, 2)


def test_solve_mod_m_examples():
    s = solve_mod_m(V((1, 1, 1, 1), 1), 0, 1)
    assert s.Q == 1 and s.modulus == 1
    x = V((1, 1, 1, 3), 15)
    s = solve_mod_m(x, 12, 15)
    assert verify_solution(x, s.y)
    s = solve_mod_m(V((1, 2, 2, 2), 4), 13, 4)
    assert s.y.residues() == (2, 0, 0, 1)
    with pytest.raises(ModulusMismatch):
        solve_mod_m(V((1, 1, 1, 1), 5), 4, 15)


def test_verify_solution_examples():
    assert verify_solution(V((1, 2, 2, 2), 4), V((2, 0, 0, 1), 4), 4)
    assert not verify_solution(V((1, 1, 1, 1), 5), V((1, 1, 1, 1), 5), 5)
    assert verify_solution(V((1, 1, 1, 1), 5), V((2, 2, 3, 3), 5), 5)
    with pytest.raises(ModulusMismatch):
        verify_solution(V((1, 1, 1, 1), 5), V((1, 1, 1, 1), 3))


def test_centered_lift():
    s = solve_mod_m(V((1, 1, 1, 3), 15), 12, 15)
    c = s.centered()
    assert all(-15 < 2 * v <= 15 for v in c)
    assert sum(v * v for v in c) % 15 == 1
    assert sum(v * v for v in c) <= q_bound(15)


def _admissible(x, q, p):
    return any(t % p for t in x)


@pytest.mark.parametrize("q,p,e", [(3, 3, 1), (9, 3, 2), (27, 3, 3), (5, 5, 1), (25, 5, 2), (7, 7, 1)])
def test_odd_complete(q, p, e):
    for x in itertools.product(range(q), repeat=4):
        if not _admissible(x, q, p):
            continue
        a = sum(t * t for t in x) % q
        sol = solve_mod_pe_odd(V(x, q), a, p, e)
        assert verify_solution(V(x, q), sol.y)


@pytest.mark.parametrize("e", [1, 2, 3, 4])
def test_two_complete(e):
    q = 2**e
    for x in itertools.product(range(q), repeat=4):
        if all(t % 2 == 0 for t in x):
            continue
        a = sum(t * t for t in x) % q
        if (e >= 2 and a % 4 == 0) or (e == 1 and a % 2 == 0) or (e >= 3 and a % 8 == 7):
            with pytest.raises(PreconditionViolation):
                solve_mod_2e(V(x, q), a, e)
            continue
        sol = solve_mod_2e(V(x, q), a, e)
        assert verify_solution(V(x, q), sol.y)


def test_two_excluded_classes_have_no_solution():
    # every rejected input mod 8 really has no solution
    for x in itertools.product(range(8), repeat=4):
        if all(t % 2 == 0 for t in x):
            continue
        a = sum(t * t for t in x) % 8
        if a % 4 == 0 or a == 7:
            assert not solutions_exist(x, 8)


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_solve_mod_m_property(data):
    m = data.draw(st.sampled_from([12, 20, 28, 36, 45, 63, 84, 100, 252, 504, 1575, 8 * 27 * 25]))
    x = tuple(data.draw(st.integers(0, m - 1)) for _ in range(4))
    a = sum(t * t for t in x) % m
    from sum3ap.arith import factorize

    for p, e in factorize(m):
        if all(t % p == 0 for t in x):
            return
        if p == 2 and (a % 4 == 0 or (e >= 3 and a % 8 == 7)):
            return
    sol = solve_mod_m(V(x, m), a, m)
    assert isinstance(sol, CongruenceSolution)
    assert verify_solution(V(x, m), sol.y)
    assert sol.Q == sum(r * r for r in sol.y.residues())


def test_sampled_large_prime_powers():
    rng = random.Random(1)
    for q, p, e in [(81, 3, 4), (243, 3, 5), (125, 5, 3), (49, 7, 2), (121, 11, 2), (128, 2, 7)]:
        done = 0
        while done < 200:
            x = tuple(rng.randrange(q) for _ in range(4))
            a = sum(t * t for t in x) % q
            if not _admissible(x, q, p):
                continue
            if p == 2 and (a % 4 == 0 or a % 8 == 7):
                continue
            sol = solve_mod_2e(V(x, q), a, e) if p == 2 else solve_mod_pe_odd(V(x, q), a, p, e)
            assert verify_solution(V(x, q), sol.y)
            done += 1
