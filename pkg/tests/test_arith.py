import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sum3ap.arith import (
    Factorization,
    crt_combine,
    factorize,
    is_prime,
    isqrt,
    mod_inverse,
    nu_p,
    primes_upto,
    primorial_excluding,
    sqrt_mod_prime,
    squarefree_decompose,
)
from sum3ap.errors import ModuliNotCoprime, NotCoprime, PreconditionViolation, TooLarge


def test_mod_inverse_examples():
    assert mod_inverse(3, 10) == 7
    assert mod_inverse(70, 3) == 1
    with pytest.raises(NotCoprime):
        mod_inverse(2, 4)
    with pytest.raises(PreconditionViolation):
        mod_inverse(1, 1)


def test_crt_examples():
    assert crt_combine([(2, 3), (3, 5)]) == (8, 15)
    assert crt_combine([(0, 1)]) == (0, 1)
    # brute scan of 0..179 gives 173 (137 is 2 mod 5)
    assert [n for n in range(180) if n % 4 == 1 and n % 9 == 2 and n % 5 == 3] == [173]
    assert crt_combine([(1, 4), (2, 9), (3, 5)]) == (173, 180)
    with pytest.raises(ModuliNotCoprime):
        crt_combine([(1, 4), (1, 6)])


def test_nu_p():
    assert nu_p(40, 2) == 3
    assert nu_p(28, 2) == 2
    assert nu_p(7, 2) == 0
    with pytest.raises(PreconditionViolation):
        nu_p(0, 2)


def test_squarefree_decompose():
    assert squarefree_decompose(48) == (3, 4)
    assert squarefree_decompose(17) == (17, 1)
    assert squarefree_decompose(200) == (2, 10)


def test_factorize():
    assert factorize(40).factors == ((2, 3), (5, 1))
    assert factorize(1).factors == ()
    assert factorize(30030).factors == tuple((p, 1) for p in (2, 3, 5, 7, 11, 13))
    assert factorize(30030).value == 30030
    with pytest.raises(TooLarge):
        factorize(10**6 + 3, cap=10**6)
    with pytest.raises(PreconditionViolation):
        Factorization(((4, 1),))


def test_primes_and_isqrt():
    assert primes_upto(13) == [2, 3, 5, 7, 11, 13]
    assert primes_upto(1) == []
    ps = primes_upto(100)
    assert len(ps) == 25 and ps[-1] == 97
    assert isqrt(10) == 3 and isqrt(0) == 0
    assert isqrt(48_000_000) == 6928


def test_primorial_excluding():
    assert primorial_excluding(7, 3) == ([2, 5, 7], 70)
    assert primorial_excluding(2, 2) == ([], 1)


@given(st.integers(1, 10**9))
@settings(max_examples=200, deadline=None)
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f) == n
    assert all(is_prime(p) for p in f.primes)
    d1, d2 = squarefree_decompose(n)
    assert d1 * d2 * d2 == n and all(e == 1 for _, e in factorize(d1))


@given(st.integers(0, 10**6), st.sampled_from([3, 5, 7, 13, 17, 101, 65537, 1_000_003]))
@settings(max_examples=200, deadline=None)
def test_sqrt_mod_prime(a, p):
    r = sqrt_mod_prime(a, p)
    has_root = any((t * t - a) % p == 0 for t in range(p)) if p < 200 else None
    if r is None:
        assert has_root in (None, False)
        assert pow(a % p, (p - 1) // 2, p) == p - 1
    else:
        assert (r * r - a) % p == 0
        if has_root is not None:
            assert r == min(t for t in range(p) if (t * t - a) % p == 0)


def test_is_prime_against_sieve():
    ps = set(primes_upto(10**4))
    assert all(is_prime(n) == (n in ps) for n in range(10**4 + 1))
