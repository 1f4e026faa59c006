import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sum3ap.errors import PreconditionViolation, TooLarge
from sum3ap.repcount import (
    ResidueVec4,
    c_am,
    c_am_local,
    is_local_sum3,
    legendre_is_sum3,
    r3_along_progression,
    r3_bruteforce,
    r3_exact,
    r3_sieved,
    r4_bruteforce,
    r4_buckets,
    r4_buckets_sparse,
    r4_jacobi,
    sigma_star,
    sphere_main_term,
    sum_r3_upto,
)

from oracles import ball_count_naive, c_am_naive, r3_naive, r4_naive, reps4, sigma_star_naive


def test_legendre_examples():
    assert legendre_is_sum3(7) is False
    assert legendre_is_sum3(68) is True
    assert legendre_is_sum3(28) is False
    assert legendre_is_sum3(0) is True


def test_r3_examples():
    assert [r3_bruteforce(n) for n in (0, 1, 7, 68)] == [1, 6, 0, 48]
    # 68: (±6,±4,±4) gives 24 signed orderings, (±8,±2,0) another 24
    assert r3_naive(68) == 48


def test_r3_against_naive():
    for n in range(200):
        assert r3_bruteforce(n) == r3_naive(n)


def test_r3_sieve_matches_brute_at_scale():
    for n in (10**6 + 1, 12_345_678, 99_999_989, 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19):
        assert r3_sieved(n) == r3_bruteforce(n)
    assert r3_exact(10**6 + 1) == r3_bruteforce(10**6 + 1)


def test_r3_caps():
    with pytest.raises(TooLarge):
        r3_bruteforce(10**6, cap=10**5)
    with pytest.raises(TooLarge):
        r3_sieved(10**6, cap=10**5)
    with pytest.raises(PreconditionViolation):
        r3_bruteforce(-1)


def test_r4_examples():
    assert [r4_bruteforce(n) for n in (1, 4, 12)] == [8, 24, 96]
    assert [r4_naive(n) for n in (1, 4, 12)] == [8, 24, 96]
    assert [r4_jacobi(n) for n in (1, 4, 70)] == [8, 24, 1152]
    assert sigma_star(70) == 144 == sigma_star_naive(70)
    assert sigma_star(4) == 3


@given(st.integers(1, 5000))
@settings(max_examples=100, deadline=None)
def test_sigma_star_property(n):
    assert sigma_star(n) == sigma_star_naive(n)


def test_c_am_examples():
    assert c_am(0, 1) == 1
    assert c_am(1, 2) == 4
    assert c_am(7, 40) == 0
    assert c_am(7, 8) == 0


def test_c_am_against_naive():
    for m in range(1, 13):
        for a in range(m):
            assert c_am(a, m) == c_am_naive(a, m)
            assert c_am_local(a, m) == c_am(a, m)
            assert is_local_sum3(a, m) == (c_am(a, m) > 0)


def test_c_am_local_multiplicative():
    for m in (60, 72, 90, 105, 126):
        for a in range(0, m, 7):
            assert c_am_local(a, m) == c_am(a, m)


def test_residue_vec():
    v = ResidueVec4.from_residues((0, 1, -1, 5), 5)
    assert v.coords == (5, 1, 4, 5)
    assert v.residues() == (0, 1, 4, 0)
    assert v.reduce(1).coords == (1, 1, 1, 1)
    with pytest.raises(PreconditionViolation):
        ResidueVec4((0, 1, 1, 1), 3)


def test_buckets_examples():
    t = r4_buckets(4, 2)
    assert t.total == 24
    assert t.entries[ResidueVec4((1, 1, 1, 1), 2)] == 16
    assert t.entries[ResidueVec4((2, 2, 2, 2), 2)] == 8
    assert t.heaviest() == (ResidueVec4((1, 1, 1, 1), 2), 16)
    t.check(4)

    t = r4_buckets(1, 1)
    assert t.entries == {ResidueVec4((1, 1, 1, 1), 1): 8}

    t = r4_buckets(70, 3)
    assert t.total == 1152
    key, count = t.heaviest()
    assert count >= math.ceil(1152 / 81)
    assert count == 48 and key == ResidueVec4((1, 1, 1, 1), 3)


@pytest.mark.parametrize("N,m", [(4, 2), (70, 3), (30, 5), (130, 4)])
def test_buckets_against_naive(N, m):
    want = Counter(tuple(v % m or m for v in t) for t in reps4(N))
    for table in (r4_buckets(N, m), r4_buckets_sparse(N, m)):
        got = {k.coords: c for k, c in table.entries.items()}
        assert got == dict(want)


def test_sparse_matches_dense_large():
    a, b = r4_buckets(3000, 12), r4_buckets_sparse(3000, 12)
    assert a.entries == b.entries and a.total == b.total == r4_jacobi(3000)


def test_sum_r3_examples():
    assert sum_r3_upto(0) == 1
    s = sum_r3_upto(100)
    assert s == ball_count_naive(100) == 4169
    assert abs(s - 4 * math.pi / 3 * 1000) / (4 * math.pi / 3 * 1000) < 0.08
    assert sum_r3_upto(100, (1, 4)) == ball_count_naive(100, 1, 4)
    assert sum_r3_upto(2000) == sum(r3_bruteforce(n) for n in range(2001))
    with pytest.raises(TooLarge):
        sum_r3_upto(10**8)


def test_sum_r3_progression_small():
    for a, m in [(1, 4), (2, 3), (5, 8)]:
        want = sum(r3_bruteforce(n) for n in range(a, 1501, m))
        assert sum_r3_upto(1500, (a, m)) == want


def test_sphere_main_term():
    assert sphere_main_term(100) == pytest.approx(4 * math.pi / 3 * 1000)
    assert sphere_main_term(100, (1, 4)) == pytest.approx(4 * math.pi / 3 * 1000 * 24 / 64)


def test_r3_along_progression():
    v = r3_along_progression(500, 3, 8)
    assert v.tolist() == [r3_bruteforce(n) for n in range(3, 501, 8)]
    assert isinstance(v, np.ndarray)
