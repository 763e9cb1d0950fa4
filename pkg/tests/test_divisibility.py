"""Unit tests for the divisibility reduction chain and its dual oracles."""

import math
import random

import pytest

from carrylab.divisibility import (
    Triple,
    binom_divides,
    factorial_divides,
    failing_primes,
    gap_report,
    large_prime_check,
    oracle_mode,
    sufficient_per_prime,
    valuation_gap,
)
from carrylab.primes import primes_up_to


def test_triple_fields():
    t = Triple(a=9, b=7, n=14)
    assert t.k == 2
    assert Triple.from_m_k(5, 3) == Triple(a=8, b=5, n=10)


def test_factorial_divides_examples():
    assert factorial_divides(Triple(5, 4, 8)) is True
    for n in (1, 2, 9, 40):
        assert factorial_divides(Triple(n, 0, n)) is True
    assert factorial_divides(Triple(9, 7, 14)) is False


def test_factorial_divides_rejects_negative_gap():
    with pytest.raises(ValueError):
        factorial_divides(Triple(3, 3, 7))


def test_oracle_mode_flag():
    assert oracle_mode(Triple(5, 4, 8)) == "dual"
    assert oracle_mode(Triple(200_001, 1, 200_000)) == "per-prime"


def test_factorial_divides_against_plain_big_integers():
    rng = random.Random(5)
    for _ in range(300):
        a = rng.randrange(0, 60)
        b = rng.randrange(0, 60)
        n = rng.randrange(0, a + b + 1)
        expected = (math.factorial(n) * math.factorial(a + b - n)) % (
            math.factorial(a) * math.factorial(b)
        ) == 0
        assert factorial_divides(Triple(a, b, n)) is expected


def test_binom_divides_examples():
    for m in (0, 1, 7, 100):
        assert binom_divides(m, 0) is True
    assert binom_divides(7, 2) is False
    assert binom_divides(4, 1) is True


def test_binom_reform_equivalence_both_modes():
    # factorial divisibility on the constructed triple == binomial divisibility;
    # factorial_divides internally runs both the Legendre and big-integer routes
    for m in range(0, 301):
        for k in range(0, 21):
            assert binom_divides(m, k) is factorial_divides(Triple.from_m_k(m, k))


def test_binom_divides_against_big_integers():
    rng = random.Random(9)
    for _ in range(400):
        m = rng.randrange(0, 300)
        k = rng.randrange(0, 20)
        expected = math.comb(2 * m, m) % math.comb(m + k, k) == 0
        assert binom_divides(m, k) is expected


def test_sufficient_per_prime_examples():
    assert sufficient_per_prime(3, 1, 2) is True
    for p in (2, 5, 13):
        assert sufficient_per_prime(0, 1, p) is True
    assert sufficient_per_prime(7, 2, 3) is False


def test_sufficiency_implies_divisibility():
    rng = random.Random(17)
    for _ in range(250):
        m = rng.randrange(1, 2000)
        k = rng.randrange(1, 16)
        if all(sufficient_per_prime(m, k, p) for p in primes_up_to(2 * m)):
            assert binom_divides(m, k) is True


def test_large_prime_check_examples():
    assert large_prime_check(7, 1, 7) is True
    assert large_prime_check(48, 1, 7) is True
    with pytest.raises(ValueError):
        large_prime_check(10, 4, 7)  # p <= 2k
    with pytest.raises(ValueError):
        large_prime_check(10, 1, 9)  # composite


def test_large_prime_check_never_false_sampled():
    rng = random.Random(23)
    trials = 0
    while trials < 10_000:
        m = rng.randrange(0, 10**6)
        k = rng.randrange(1, 11)
        p = rng.choice([q for q in primes_up_to(100) if q > 2 * k])
        assert large_prime_check(m, k, p) is True
        trials += 1


def test_valuation_gap_examples():
    from carrylab.valuations import carry_count

    for m in (0, 3, 17):
        for p in (2, 5):
            assert valuation_gap(m, 0, p) == carry_count(m, p)
    assert valuation_gap(7, 2, 3) == -1
    assert valuation_gap(10, 4, 7) == -1


def test_per_prime_global_consistency():
    rng = random.Random(31)
    for _ in range(200):
        m = rng.randrange(0, 500)
        k = rng.randrange(0, 13)
        expected = all(valuation_gap(m, k, p) >= 0 for p in primes_up_to(m + k))
        assert binom_divides(m, k) is expected


def test_failing_primes_identifies_obstruction():
    assert failing_primes(7, 2) == [3]
    assert failing_primes(4, 1) == []


def test_gap_report_threshold_indicator():
    rep = gap_report(100, 3, 5, c2=0.5, p_bound=6)
    assert rep.threshold == pytest.approx(0.5 * math.log(100) / math.log(5))
    rep_out = gap_report(100, 3, 7, c2=0.5, p_bound=6)
    assert rep_out.threshold == 0.0
