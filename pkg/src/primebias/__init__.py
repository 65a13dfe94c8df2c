"""Twin and isolated primes next to squarefree multiples of 6."""

from .baseline import count_nonsqf_twins, count_sqf_neighbors, count_sqf_twins
from .classify import Tally, adjacent_multiple_of_six, count_isolated, count_twins
from .runner import Checkpoint, ExperimentSpec, RunResult, run
from .sieve import (
    BasePrimes,
    SieveSegment,
    is_squarefree_oracle,
    nth_prime_bound,
    sieve_segment,
    small_primes,
)
from .stats import (
    BiasReport,
    bias_ratio,
    excess,
    redistribution_report,
    relative_difference,
    unbiased_ratio,
)

__version__ = "0.1.0"
