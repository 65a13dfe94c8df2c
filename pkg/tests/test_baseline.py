import pytest

from primebias.baseline import (
    BASELINE_KINDS,
    count_nonsqf_twins,
    count_sqf_neighbors,
    count_sqf_twins,
    iter_multiple_segments,
    scan_multiples,
)
from primebias.classify import Tally, count_twins
from primebias.sieve import base_primes_for
from primebias.stats import bias_ratio, unbiased_ratio

import oracles

M = 10**4


@pytest.fixture(scope="module")
def flags():
    prime, sqf = oracles.trial_division_flags(6 * M + 2)
    return prime, sqf


@pytest.mark.parametrize("kind", BASELINE_KINDS)
def test_matches_double_loop(kind, flags):
    prime, sqf = flags
    expected = oracles.multiples(kind, M, sqf=lambda m: bool(sqf[m]), prime=lambda m: bool(prime[m]))
    got = Tally()
    for c in iter_multiple_segments(kind, M, segment_size=999):
        got = got + c.tally
    assert got == Tally(*expected)


@pytest.mark.parametrize("kind", BASELINE_KINDS)
def test_matches_scalar_oracle_small(kind):
    assert scan_multiples(kind, 1, 301, base_primes_for(6 * 301).limit) == Tally(*oracles.multiples(kind, 300))


def test_examples():
    assert count_sqf_twins(3) == Tally(3, 1)
    assert count_sqf_twins(1) == Tally(1, 1)
    assert count_sqf_neighbors(2, include_primes=False) == Tally(*oracles.multiples("sqf-neighbors-noprimes", 2))
    assert count_sqf_neighbors(2, include_primes=False) == Tally(0, 0)
    assert count_nonsqf_twins(1) == Tally(0, 0)


@pytest.mark.parametrize("m", [1, 10, 1234, 10**5])
def test_excluding_primes_shrinks(m):
    for count in (count_sqf_twins, count_sqf_neighbors):
        inc, exc = count(m, True), count(m, False)
        assert exc.a <= inc.a and exc.b <= inc.b


@pytest.mark.parametrize("workers", [1, 2])
def test_segment_and_worker_independence(workers):
    ref = count_sqf_twins(50000, False)
    assert count_sqf_twins(50000, False, segment_size=600, workers=workers) == ref


def test_control_converges_but_twins_do_not():
    r0 = unbiased_ratio()
    control = bias_ratio(count_sqf_twins(10**6, include_primes=False))
    twins = bias_ratio(count_twins(10**6))
    assert abs(control - r0) < 0.02
    assert abs(twins - 2.426) < 0.001
    assert twins - control > 0.1


def test_unknown_kind_and_bad_start():
    with pytest.raises(ValueError):
        list(iter_multiple_segments("cousins", 10))
    with pytest.raises(ValueError):
        list(iter_multiple_segments("sqf-twins", 10, start=0))


@pytest.mark.slow
def test_nonsquarefree_twins_billion():
    t = count_nonsqf_twins(10**9)
    assert abs(bias_ratio(t) - 2.161) <= 0.001
