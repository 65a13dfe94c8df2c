"""
Control experiments over the first M multiples of 6.

For each ``n = 1..M`` look at the triple ``6n - 1, 6n, 6n + 1``.  ``a``
counts the ``n`` whose outer pair satisfies the experiment's condition
and ``b`` those that additionally have a squarefree center ``6n``.

Kinds:

* ``sqf-twins``: both ``6n +/- 1`` squarefree.
* ``sqf-twins-noprimes``: both squarefree and neither prime.
* ``sqf-neighbors``: at least one of ``6n +/- 1`` squarefree.
* ``sqf-neighbors-noprimes``: at least one is squarefree and not prime.
* ``nonsqf-twins``: both ``6n +/- 1`` nonsquarefree.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple

import numpy as np

from .classify import Tally, _base
from .parallel import ordered_map
from .sieve import DEFAULT_SEGMENT_SIZE, sieve_segment

SQF_TWINS = "sqf-twins"
SQF_TWINS_NOPRIMES = "sqf-twins-noprimes"
SQF_NEIGHBORS = "sqf-neighbors"
SQF_NEIGHBORS_NOPRIMES = "sqf-neighbors-noprimes"
NONSQF_TWINS = "nonsqf-twins"
BASELINE_KINDS = (
    SQF_TWINS,
    SQF_TWINS_NOPRIMES,
    SQF_NEIGHBORS,
    SQF_NEIGHBORS_NOPRIMES,
    NONSQF_TWINS,
)


class Commit(NamedTuple):
    next_start: int
    tally: Tally


def baseline_kind(pair: str, include_primes: bool = True) -> str:
    """Map ``("twins" | "neighbors", include_primes)`` to a kind name."""
    kinds = {
        ("twins", True): SQF_TWINS,
        ("twins", False): SQF_TWINS_NOPRIMES,
        ("neighbors", True): SQF_NEIGHBORS,
        ("neighbors", False): SQF_NEIGHBORS_NOPRIMES,
    }
    return kinds[pair, include_primes]


def scan_multiples(kind: str, n_lo: int, n_hi: int, limit: int) -> Tally:
    """Tally ``n`` in ``[n_lo, n_hi)``, ``n_lo >= 1``."""
    seg = sieve_segment(6 * n_lo - 1, 6 * n_hi - 4, _base(limit))
    sq, pr = seg.squarefree_flags, seg.prime_flags
    left, center, right = sq[0::6], sq[1::6], sq[2::6]

    if kind == SQF_TWINS:
        hit = left & right
    elif kind == SQF_TWINS_NOPRIMES:
        hit = left & ~pr[0::6] & right & ~pr[2::6]
    elif kind == SQF_NEIGHBORS:
        hit = left | right
    elif kind == SQF_NEIGHBORS_NOPRIMES:
        hit = (left & ~pr[0::6]) | (right & ~pr[2::6])
    elif kind == NONSQF_TWINS:
        hit = ~left & ~right
    else:
        raise ValueError(f"unknown baseline experiment {kind!r}")
    return Tally(int(np.count_nonzero(hit)), int(np.count_nonzero(hit & center)))


def iter_multiple_segments(
    kind: str,
    m: int,
    start: int = 1,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> Iterator[Commit]:
    """Stream commits for ``n = start..m``; ``segment_size`` is measured in sieved values."""
    if kind not in BASELINE_KINDS:
        raise ValueError(f"unknown baseline experiment {kind!r}")
    if start < 1:
        raise ValueError(f"multiple index starts at 1, got {start}")
    step = max(1, segment_size // 6)
    limit = math.isqrt(6 * m + 1) + 1
    ranges = [(lo, min(lo + step, m + 1)) for lo in range(start, m + 1, step)]
    results = ordered_map(scan_multiples, ((kind, lo, hi, limit) for lo, hi in ranges), workers)
    try:
        for (lo, hi), tally in zip(ranges, results):
            yield Commit(hi, tally)
    finally:
        results.close()


def _count(kind: str, m: int, segment_size: int, workers: int) -> Tally:
    total = Tally()
    for c in iter_multiple_segments(kind, m, segment_size=segment_size, workers=workers):
        total = total + c.tally
    return total


def count_sqf_twins(
    m: int, include_primes: bool = True, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1
) -> Tally:
    return _count(baseline_kind("twins", include_primes), m, segment_size, workers)


def count_sqf_neighbors(
    m: int, include_primes: bool = True, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1
) -> Tally:
    # The printed loop for the no-primes case binds `&&a++` to the right
    # operand only; the published counts follow the inclusive-or reading.
    return _count(baseline_kind("neighbors", include_primes), m, segment_size, workers)


def count_nonsqf_twins(m: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1) -> Tally:
    return _count(NONSQF_TWINS, m, segment_size, workers)
