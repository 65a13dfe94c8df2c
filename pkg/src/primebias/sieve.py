"""
Segmented sieve producing primality and squarefreeness flags.

A segment covers the half-open range ``[lo, hi)``.  Both flag arrays are
computed from one shared table of base primes: composites are struck by
multiples of ``p`` and nonsquarefree numbers by multiples of ``p*p``, for
every base prime with ``p*p < hi``.

The trial-division oracles at the bottom of the module are deliberately
naive and share no code with the sieve; tests use them to check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

UINT64_MAX = 2**64 - 1
BASE_SIEVE_CEILING = 2**32
DEFAULT_SEGMENT_SIZE = 2**22
MAX_SEGMENT_SIZE = 2**30


class CapacityError(ValueError):
    """Requested range exceeds a configured sieve ceiling."""


class InsufficientBasePrimes(ValueError):
    """Base prime table does not reach the square root of the segment."""


@dataclass(frozen=True)
class BasePrimes:
    limit: int
    primes: np.ndarray
    _as_list: list = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self._as_list is None:
            object.__setattr__(self, "_as_list", self.primes.tolist())

    def __len__(self):
        return len(self.primes)

    def covers(self, hi: int) -> bool:
        return self.limit * self.limit >= hi


@dataclass(frozen=True)
class SieveSegment:
    """Flags for every integer in ``[lo, hi)``; index ``i`` is the value ``lo + i``."""

    lo: int
    hi: int
    prime_flags: np.ndarray
    squarefree_flags: np.ndarray

    def __len__(self):
        return self.hi - self.lo

    def _index(self, m: int) -> int:
        if not self.lo <= m < self.hi:
            raise IndexError(f"{m} outside segment [{self.lo}, {self.hi})")
        return m - self.lo

    def is_prime(self, m: int) -> bool:
        return bool(self.prime_flags[self._index(m)])

    def is_squarefree(self, m: int) -> bool:
        return bool(self.squarefree_flags[self._index(m)])

    def primes(self) -> list[int]:
        return [self.lo + int(i) for i in np.flatnonzero(self.prime_flags)]

    def squarefree(self) -> list[int]:
        return [self.lo + int(i) for i in np.flatnonzero(self.squarefree_flags)]


def small_primes(limit: int, ceiling: int = BASE_SIEVE_CEILING) -> BasePrimes:
    """Return all primes ``<= limit`` with a plain sieve of Eratosthenes."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if limit > ceiling:
        raise CapacityError(f"base sieve limit {limit} exceeds ceiling {ceiling}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return BasePrimes(limit, np.flatnonzero(flags).astype(np.int64))


def base_primes_for(hi: int, ceiling: int = BASE_SIEVE_CEILING) -> BasePrimes:
    """Smallest base table able to sieve any segment ending at ``hi``."""
    limit = max(2, math.isqrt(max(hi - 1, 0)) + 1)
    return small_primes(limit, ceiling)


def sieve_segment(
    lo: int,
    hi: int,
    base: BasePrimes,
    max_size: int = MAX_SEGMENT_SIZE,
) -> SieveSegment:
    """
    Sieve ``[lo, hi)`` for primes and squarefree numbers.

    Parameters
    ----------
    lo, hi : int
        Half-open range, ``0 <= lo < hi <= 2**64``.
    base : BasePrimes
        Must satisfy ``base.limit**2 >= hi``.
    max_size : int
        Ceiling on ``hi - lo``.
    """
    if not 0 <= lo < hi <= UINT64_MAX + 1:
        raise ValueError(f"invalid segment [{lo}, {hi})")
    n = hi - lo
    if n > max_size:
        raise CapacityError(f"segment length {n} exceeds ceiling {max_size}")
    if not base.covers(hi):
        raise InsufficientBasePrimes(
            f"base primes up to {base.limit} cannot sieve values below {hi}"
        )

    prime = np.ones(n, dtype=bool)
    sqf = np.ones(n, dtype=bool)
    for p in base._as_list:
        pp = p * p
        if pp >= hi:
            break
        start = max(pp, -(-lo // p) * p)
        prime[start - lo :: p] = False
        start = -(-lo // pp) * pp
        sqf[start - lo :: pp] = False
    # 0 is neither prime nor squarefree; 1 is squarefree but not prime.
    if lo < 2:
        prime[: 2 - lo] = False
    if lo == 0:
        sqf[0] = False
    return SieveSegment(lo, hi, prime, sqf)


def nth_prime_bound(n: int) -> int:
    """Upper bound on the n-th prime: ``n (ln n + ln ln n)`` for ``n >= 6``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n < 6:
        return 13
    ln = math.log(n)
    bound = math.ceil(n * (ln + math.log(ln)))
    if bound > UINT64_MAX:
        raise OverflowError(f"prime bound for n={n} exceeds 64 bits")
    return bound


def is_prime_oracle(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def is_squarefree_oracle(m: int) -> bool:
    """True iff no ``d >= 2`` has ``d*d`` dividing ``m`` (trial division)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True
