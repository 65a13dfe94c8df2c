"""
Part A tallies over the first N primes: twin pairs and isolated primes.

Primes are streamed segment by segment in increasing order.  Each
segment is sieved two values wider on both sides so ``p - 2``, ``p + 2``
and ``p +/- 1`` are always inside the window.  "First N primes" is an
ordinal condition, so segments are committed in ascending order with a
running prime count and the segment holding the N-th prime is rescanned
with an exact cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .parallel import ordered_map
from .sieve import DEFAULT_SEGMENT_SIZE, nth_prime_bound, sieve_segment, small_primes

TWINS = "twins"
ISOLATED = "isolated"
PRIME_KINDS = (TWINS, ISOLATED)


@dataclass(frozen=True)
class Tally:
    """``a`` counts all target objects, ``b`` those whose associated number is squarefree."""

    a: int = 0
    b: int = 0

    def __post_init__(self):
        if not 0 <= self.b <= self.a:
            raise ValueError(f"invalid tally a={self.a}, b={self.b}")

    def __add__(self, other: "Tally") -> "Tally":
        return Tally(self.a + other.a, self.b + other.b)


class Commit(NamedTuple):
    """Progress after one segment: where to resume and what it contributed."""

    next_start: int
    primes_seen: int
    tally: Tally


@lru_cache(maxsize=8)
def _base(limit: int):
    return small_primes(limit)


def adjacent_multiple_of_six(p: int) -> int:
    r = p % 6
    if p < 5 or r not in (1, 5):
        raise ValueError(f"{p} has no adjacent multiple of 6 (need p >= 5, p = +/-1 mod 6)")
    return p - 1 if r == 1 else p + 1


def _window(lo: int, hi: int, limit: int):
    """Prime and squarefree flags for values ``lo - 2 .. hi + 1``."""
    wlo = max(lo - 2, 0)
    seg = sieve_segment(wlo, hi + 2, _base(limit))
    pr, sq = seg.prime_flags, seg.squarefree_flags
    pad = wlo - (lo - 2)
    if pad:
        pr = np.concatenate([np.zeros(pad, dtype=bool), pr])
        sq = np.concatenate([np.zeros(pad, dtype=bool), sq])
    return pr, sq


def scan_primes(kind: str, lo: int, hi: int, limit: int, take: int | None = None):
    """
    Tally primes in ``[lo, hi)``.

    Returns ``(primes_counted, Tally)``.  If ``take`` is given only the
    first ``take`` primes of the range are counted.  ``limit`` is the base
    prime limit and must satisfy ``limit**2 >= hi + 2``.
    """
    pr, sq = _window(lo, hi, limit)
    core = pr[2:-2]
    if take is not None:
        idx = np.flatnonzero(core)
        if take < len(idx):
            core = core.copy()
            core[idx[take] :] = False
    count = int(np.count_nonzero(core))
    plus2 = pr[4:]

    if kind == TWINS:
        twin = core & plus2
        a = np.count_nonzero(twin)
        b = np.count_nonzero(twin & sq[3:-1])
    elif kind == ISOLATED:
        iso = core & ~plus2 & ~pr[:-4]
        if lo <= 2 < hi:
            iso[2 - lo] = False
        n = hi - lo
        one_mod6 = np.zeros(n, dtype=bool)
        one_mod6[(1 - lo) % 6 :: 6] = True
        five_mod6 = np.zeros(n, dtype=bool)
        five_mod6[(5 - lo) % 6 :: 6] = True
        near_sqf = (one_mod6 & sq[1:-3]) | (five_mod6 & sq[3:-1])
        a = np.count_nonzero(iso)
        b = np.count_nonzero(iso & near_sqf)
    else:
        raise ValueError(f"unknown prime experiment {kind!r}")
    return count, Tally(int(a), int(b))


def iter_prime_segments(
    kind: str,
    n: int,
    start: int = 0,
    primes_seen: int = 0,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> Iterator[Commit]:
    """
    Stream commits for the first ``n`` primes, starting at value ``start``.

    ``primes_seen`` is the number of primes below ``start``; together they
    let a run resume from a checkpoint.
    """
    if kind not in PRIME_KINDS:
        raise ValueError(f"unknown prime experiment {kind!r}")
    if n < 1 or primes_seen >= n:
        return
    bound = nth_prime_bound(n) + 1
    limit = math.isqrt(bound + 1) + 1
    ranges = [(lo, min(lo + segment_size, bound)) for lo in range(start, bound, segment_size)]
    results = ordered_map(scan_primes, ((kind, lo, hi, limit) for lo, hi in ranges), workers)
    try:
        for (lo, hi), (count, tally) in zip(ranges, results):
            remaining = n - primes_seen
            if count >= remaining:
                if count > remaining:
                    count, tally = scan_primes(kind, lo, hi, limit, take=remaining)
                yield Commit(hi, primes_seen + count, tally)
                return
            primes_seen += count
            yield Commit(hi, primes_seen, tally)
    finally:
        results.close()
    raise RuntimeError(f"prime bound {bound} too small for n={n}")


def _total(commits: Iterator[Commit]) -> Tally:
    total = Tally()
    for c in commits:
        total = total + c.tally
    return total


def count_twins(n: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1) -> Tally:
    """Twin pairs ``(p, p + 2)`` with ``p`` among the first ``n`` primes; b needs ``p + 1`` squarefree."""
    return _total(iter_prime_segments(TWINS, n, segment_size=segment_size, workers=workers))


def count_isolated(n: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1) -> Tally:
    """
    Isolated primes among ``3 .. p_n``; b needs the adjacent multiple of 6
    to be squarefree.  The prime 2 is never counted.
    """
    return _total(iter_prime_segments(ISOLATED, n, segment_size=segment_size, workers=workers))


def nth_prime(n: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> int:
    """The n-th prime, found by streaming prime counts."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    bound = nth_prime_bound(n) + 1
    limit = math.isqrt(bound) + 1
    seen = 0
    for lo in range(0, bound, segment_size):
        seg = sieve_segment(lo, min(lo + segment_size, bound), _base(limit))
        idx = np.flatnonzero(seg.prime_flags)
        if seen + len(idx) >= n:
            return lo + int(idx[n - seen - 1])
        seen += len(idx)
    raise RuntimeError(f"prime bound {bound} too small for n={n}")
