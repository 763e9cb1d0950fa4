"""carrylab: exact carry-counting experiments for factorial and binomial divisibility.

The library half computes everything exactly (digits, valuations, carry
scans, good-m scans, carry-chain tails); the CLI half emits byte-stable CSV
and JSON for the plotting frontend.
"""

from .chain import (
    CarryChainSpec,
    TailResult,
    empirical_chain_check,
    exact_tail,
    optimal_tilt,
    rate_function,
    tail_bounds,
    tilted_eigenvalue,
    transition_matrix,
)
from .density import (
    DensityPoint,
    ObstructionWitness,
    density_sweep,
    gap_statistics,
    interval_product_divides,
    obstruction_scan,
    sharpness_census,
)
from .divisibility import (
    GapReport,
    Triple,
    binom_divides,
    factorial_divides,
    large_prime_check,
    sufficient_per_prime,
    valuation_gap,
)
from .primes import is_prime, primes_up_to
from .search import (
    CensusReport,
    DerivedParams,
    GoodCertificate,
    SearchParams,
    census,
    derive_params,
    is_bad_carry,
    is_bad_spike,
    is_good,
    scan,
)
from .valuations import (
    DigitExpansion,
    ValuationProfile,
    binomial_valuation,
    block_max_valuation,
    block_sum_valuation,
    carry_count,
    digit_sum,
    digits,
    factorial_valuation,
    large_digit_count,
    truncated_carry_count,
    valuation,
    valuation_profile,
)

__version__ = "0.1.0"
