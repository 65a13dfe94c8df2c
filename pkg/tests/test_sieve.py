import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primebias.classify import nth_prime
from primebias.sieve import (
    CapacityError,
    InsufficientBasePrimes,
    base_primes_for,
    is_prime_oracle,
    is_squarefree_oracle,
    nth_prime_bound,
    sieve_segment,
    small_primes,
)

from oracles import trial_division_flags


def test_small_primes_examples():
    assert small_primes(10).primes.tolist() == [2, 3, 5, 7]
    assert small_primes(2).primes.tolist() == [2]


def test_small_primes_count_matches_trial_division():
    found = []
    for m in range(2, 10**6 + 1):
        r = math.isqrt(m)
        for p in found:
            if p > r:
                found.append(m)
                break
            if m % p == 0:
                break
        else:
            found.append(m)
    assert len(found) == 78498
    assert len(small_primes(10**6)) == 78498


def test_small_primes_errors():
    with pytest.raises(ValueError):
        small_primes(1)
    with pytest.raises(CapacityError):
        small_primes(2**32 + 1)
    with pytest.raises(CapacityError):
        small_primes(1000, ceiling=100)


def test_segment_examples():
    seg = sieve_segment(2, 12, small_primes(10))
    assert seg.primes() == [2, 3, 5, 7, 11]
    assert seg.squarefree() == [2, 3, 5, 6, 7, 10, 11]

    seg = sieve_segment(48, 51, small_primes(10))
    assert not seg.prime_flags.any()
    assert not seg.squarefree_flags.any()

    seg = sieve_segment(0, 2, small_primes(2))
    assert seg.prime_flags.tolist() == [False, False]
    assert seg.squarefree_flags.tolist() == [False, True]


def test_segment_errors():
    base = small_primes(10)
    with pytest.raises(InsufficientBasePrimes):
        sieve_segment(0, 101, base)
    with pytest.raises(CapacityError):
        sieve_segment(0, 100, base, max_size=64)
    with pytest.raises(ValueError):
        sieve_segment(10, 10, base)
    seg = sieve_segment(50, 60, base)
    with pytest.raises(IndexError):
        seg.is_prime(60)


def test_sieve_matches_trial_division_to_one_million():
    hi = 10**6 + 1
    prime, sqf = trial_division_flags(hi)
    seg = sieve_segment(0, hi, base_primes_for(hi))
    np.testing.assert_array_equal(seg.prime_flags, prime)
    np.testing.assert_array_equal(seg.squarefree_flags, sqf)


def test_scalar_oracles_agree_with_sieve_exhaustively():
    seg = sieve_segment(1, 10**4, base_primes_for(10**4))
    for m in range(1, 10**4):
        assert seg.is_prime(m) == is_prime_oracle(m)
        assert seg.is_squarefree(m) == is_squarefree_oracle(m)


@pytest.mark.parametrize("m,expected", [(4, False), (6, True), (12, False), (1, True), (49, False)])
def test_squarefree_oracle_examples(m, expected):
    assert is_squarefree_oracle(m) is expected


def test_squarefree_oracle_rejects_zero():
    with pytest.raises(ValueError):
        is_squarefree_oracle(0)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=10**12, max_value=10**12 + 10**6), st.integers(min_value=1, max_value=2000))
def test_large_offsets_match_oracles(lo, length):
    seg = sieve_segment(lo, lo + length, base_primes_for(lo + length))
    m = lo + length // 2
    assert seg.is_squarefree(m) == is_squarefree_oracle(m)
    assert seg.is_prime(m) == is_prime_oracle(m)


def test_segment_splitting_invariance():
    rng = np.random.default_rng(20240611)
    base = base_primes_for(10**7)
    for _ in range(100):
        lo, hi = sorted(rng.integers(0, 10**7, size=2).tolist())
        if hi - lo < 2:
            hi = lo + 2
        mid = int(rng.integers(lo + 1, hi))
        whole = sieve_segment(lo, hi, base)
        left = sieve_segment(lo, mid, base)
        right = sieve_segment(mid, hi, base)
        np.testing.assert_array_equal(whole.prime_flags, np.concatenate([left.prime_flags, right.prime_flags]))
        np.testing.assert_array_equal(
            whole.squarefree_flags, np.concatenate([left.squarefree_flags, right.squarefree_flags])
        )


def test_every_prime_is_squarefree():
    seg = sieve_segment(0, 10**6, base_primes_for(10**6))
    assert not (seg.prime_flags & ~seg.squarefree_flags).any()


def test_squarefree_density():
    seg = sieve_segment(1, 10**7 + 1, base_primes_for(10**7 + 1))
    assert abs(np.count_nonzero(seg.squarefree_flags) / 10**7 - 6 / math.pi**2) < 0.001


def test_squarefree_density_among_multiples_of_six():
    seg = sieve_segment(6, 6 * 10**7 + 1, base_primes_for(6 * 10**7 + 1))
    frac = np.count_nonzero(seg.squarefree_flags[::6]) / 10**7
    assert abs(frac - 3 / math.pi**2) < 0.001


def test_nth_prime_bound_small():
    assert nth_prime_bound(1) == 13
    assert all(nth_prime_bound(n) >= p for n, p in enumerate([2, 3, 5, 7, 11, 13], 1))
    with pytest.raises(ValueError):
        nth_prime_bound(0)
    with pytest.raises(OverflowError):
        nth_prime_bound(10**18)


def test_nth_prime_bound_million():
    p = nth_prime(10**6)
    assert p == 15485863
    assert nth_prime_bound(10**6) >= p


@pytest.mark.slow
def test_nth_prime_bound_hundred_million():
    p = nth_prime(10**8)
    assert p == 2038074743
    assert nth_prime_bound(10**8) >= p
