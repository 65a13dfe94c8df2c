"""
Bias measures computed from integer tallies.

All ratios are evaluated once from the exact ``(a, b)`` counts; nothing
is accumulated in floating point.  Percent-like quantities are returned
as fractions.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .classify import Tally


def unbiased_ratio() -> float:
    """Nonsquarefree to squarefree odds among multiples of 6: ``pi**2/3 - 1``."""
    return math.pi**2 / 3 - 1


def natural_ratio() -> float:
    """Nonsquarefree to squarefree odds among all integers: ``pi**2/6 - 1``."""
    return math.pi**2 / 6 - 1


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def bias_ratio(t: Tally) -> float:
    if t.b == 0:
        raise ZeroDivisionError("bias ratio undefined for b = 0")
    return (t.a - t.b) / t.b


def relative_difference(r: float, r0: float) -> float:
    return abs(r - r0) / r0


def excess(r: float, r0: float) -> int:
    """Excess per 1000 squarefree-adjacent objects, ``round(1000 (r - r0))``."""
    return round_half_away(1000 * (r - r0))


@dataclass(frozen=True)
class BiasReport:
    r: float
    r0: float
    rel_diff: float
    epsilon: int
    expected_b: int
    deficit: int
    relative_deficit: float
    relative_excess: float
    redistribution_share: float

    def as_dict(self) -> dict:
        return asdict(self)


def redistribution_report(t: Tally, centered_total: int) -> BiasReport:
    """
    Compare the observed ``b`` with its unbiased expectation.

    ``centered_total`` is the number of objects actually centered on (or
    adjacent to) a multiple of 6; for twin primes it is ``t.a - 1``
    because the pair (3, 5) is counted in ``a``.
    """
    if not t.b <= centered_total <= t.a:
        raise ValueError(f"centered_total {centered_total} outside [{t.b}, {t.a}]")
    r0 = unbiased_ratio()
    r = bias_ratio(t)
    expected_b = round_half_away(centered_total / (r0 + 1))
    if expected_b in (0, centered_total):
        raise ValueError(f"expected squarefree count {expected_b} is degenerate")
    deficit = expected_b - t.b
    return BiasReport(
        r=r,
        r0=r0,
        rel_diff=relative_difference(r, r0),
        epsilon=excess(r, r0),
        expected_b=expected_b,
        deficit=deficit,
        relative_deficit=deficit / expected_b,
        relative_excess=deficit / (centered_total - expected_b),
        redistribution_share=deficit / centered_total,
    )
