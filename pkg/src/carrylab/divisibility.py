"""Factorial and binomial divisibility checks, exact and per-prime.

The dual-route check in :func:`factorial_divides` is the anti-bug oracle for
the whole package: a Legendre per-prime comparison and an exact big-integer
division must agree whenever the operands are small enough to multiply out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _vecops
from .primes import is_prime, primes_array, primes_up_to
from .valuations import (
    binomial_valuation,
    block_max_valuation,
    carry_count,
)

# Largest n for which the big-integer route is still computed alongside the
# per-prime route.  Above it the check silently narrows to per-prime only;
# callers that need to surface the narrowing use oracle_mode().
EXACT_LIMIT = 100_000


@dataclass(frozen=True)
class Triple:
    """A candidate (a, b, n) for the factorial divisibility a! b! | n! k!."""

    a: int
    b: int
    n: int

    @property
    def k(self) -> int:
        return self.a + self.b - self.n

    @classmethod
    def from_m_k(cls, m: int, k: int) -> "Triple":
        """The constructed family a = m + k, b = m, n = 2m."""
        return cls(a=m + k, b=m, n=2 * m)


@dataclass(frozen=True)
class GapReport:
    """Signed valuation gap at one prime, with the threshold it is held to."""

    p: int
    gap: int
    threshold: float


def oracle_mode(triple: Triple, exact_limit: int = EXACT_LIMIT) -> str:
    """'dual' when the big-integer route runs next to per-prime, else 'per-prime'."""
    return "dual" if max(triple.a, triple.b, triple.n) <= exact_limit else "per-prime"


def _per_prime_factorials_divide(a: int, b: int, n: int, k: int) -> bool:
    primes = primes_array(max(a, b, n))
    if len(primes) == 0:
        return True
    left = _vecops.factorial_valuation_per_prime(a, primes) + _vecops.factorial_valuation_per_prime(b, primes)
    right = _vecops.factorial_valuation_per_prime(n, primes) + _vecops.factorial_valuation_per_prime(k, primes)
    return bool((left <= right).all())


def factorial_divides(triple: Triple, exact_limit: int = EXACT_LIMIT) -> bool:
    """True iff a! * b! divides n! * k! for k = a + b - n.

    Computed per-prime over all primes <= max(a, b, n); when every operand is
    within exact_limit the result is cross-checked against exact big-integer
    division and any disagreement raises (it would mean a bug, not an input
    problem).
    """
    a, b, n = triple.a, triple.b, triple.n
    if min(a, b, n) < 0:
        raise ValueError("triple components must be naturals")
    k = triple.k
    if k < 0:
        raise ValueError("need a + b >= n")
    verdict = _per_prime_factorials_divide(a, b, n, k)
    if oracle_mode(triple, exact_limit) == "dual":
        exact = (math.factorial(n) * math.factorial(k)) % (math.factorial(a) * math.factorial(b)) == 0
        if exact is not verdict:
            raise RuntimeError(
                f"per-prime and big-integer divisibility oracles disagree on {triple}"
            )
    return verdict


def binom_divides(m: int, k: int) -> bool:
    """True iff C(m+k, k) divides C(2m, m).

    Checked prime by prime up to m + k; primes above contribute nothing to
    the left-hand side.
    """
    if m < 0 or k < 0:
        raise ValueError("m and k must be naturals")
    if k == 0:
        return True
    primes = primes_array(m + k)
    f_m = _vecops.factorial_valuation_per_prime(m, primes)
    f_k = _vecops.factorial_valuation_per_prime(k, primes)
    f_mk = _vecops.factorial_valuation_per_prime(m + k, primes)
    f_2m = _vecops.factorial_valuation_per_prime(2 * m, primes)
    # nu(C(m+k,k)) <= nu(C(2m,m))  <=>  f(m+k) - f(k) + f(m) <= f(2m)
    return bool((f_mk - f_k + f_m <= f_2m).all())


def sufficient_per_prime(m: int, k: int, p: int) -> bool:
    """The workhorse sufficient condition at one prime: V_max <= carry count."""
    return block_max_valuation(m, k, p) <= carry_count(m, p)


def large_prime_check(m: int, k: int, p: int) -> bool:
    """sufficient_per_prime restricted to p > 2k, where it must always hold.

    A high power p**J dividing some m+i pins the low J digits of m at
    >= (p+1)/2, each forcing a carry; a False return here is a bug.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if p <= 2 * k:
        raise ValueError("large_prime_check requires p > 2k")
    return sufficient_per_prime(m, k, p)


def valuation_gap(m: int, k: int, p: int) -> int:
    """carry_count(m, p) - nu_p(C(m+k, k)); negative values are meaningful."""
    return carry_count(m, p) - binomial_valuation(m + k, k, p)


def gap_report(m: int, k: int, p: int, c2: float, p_bound: int) -> GapReport:
    """Gap at one prime against the threshold c2 * log m / log p * [p <= p_bound]."""
    threshold = c2 * math.log(m) / math.log(p) if p <= p_bound else 0.0
    return GapReport(p=p, gap=valuation_gap(m, k, p), threshold=threshold)


def failing_primes(m: int, k: int) -> list[int]:
    """Primes p <= m + k where the binomial divisibility fails (gap < 0).

    Uses the Legendre form of the gap, nu(C(2m,m)) - nu(C(m+k,k)), which
    vectorizes across the whole prime list.
    """
    if k == 0:
        return []
    primes = primes_array(m + k)
    f_m = _vecops.factorial_valuation_per_prime(m, primes)
    f_k = _vecops.factorial_valuation_per_prime(k, primes)
    f_mk = _vecops.factorial_valuation_per_prime(m + k, primes)
    f_2m = _vecops.factorial_valuation_per_prime(2 * m, primes)
    gap = (f_2m - 2 * f_m) - (f_mk - f_k - f_m)
    return [int(p) for p in primes[gap < 0]]
