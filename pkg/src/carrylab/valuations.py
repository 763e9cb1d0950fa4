"""Exact base-p digit, valuation, and carry primitives on arbitrary-size integers.

Everything here is pure and exact: Python integers throughout, no floats.
The carry scan realizes Kummer's description of the p-adic valuation of the
central binomial coefficient, so ``carry_count(m, p)`` equals
``binomial_valuation(2m, m, p)`` digit-for-digit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .primes import is_prime


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"base must be a prime, got {p}")


@dataclass(frozen=True)
class DigitExpansion:
    """Little-endian base-p digits of a natural number, no trailing zeros."""

    base: int
    digits: tuple[int, ...]

    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.base + d
        return v

    def digit(self, j: int) -> int:
        """Digit at position j; positions beyond the expansion read as 0."""
        return self.digits[j] if j < len(self.digits) else 0


def digits(n: int, p: int) -> DigitExpansion:
    """Canonical little-endian base-p expansion of n (empty for n = 0)."""
    _require_prime(p)
    if n < 0:
        raise ValueError("n must be >= 0")
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return DigitExpansion(p, tuple(out))


def valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n.  Requires n >= 1 (valuation of 0 is infinite)."""
    _require_prime(p)
    if n < 1:
        raise ValueError("valuation requires n >= 1")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def factorial_valuation(n: int, p: int) -> int:
    """Valuation of n! by Legendre's formula: sum of floor(n / p**j)."""
    _require_prime(p)
    if n < 0:
        raise ValueError("n must be >= 0")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def binomial_valuation(n: int, r: int, p: int) -> int:
    """Valuation of C(n, r), from Legendre sums.  Requires r <= n."""
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    return factorial_valuation(n, p) - factorial_valuation(r, p) - factorial_valuation(n - r, p)


def carry_count(m: int, p: int) -> int:
    """Carries produced when adding m + m in base p.

    By Kummer's theorem this equals the p-adic valuation of C(2m, m).  The
    final carry out of the top digit never cascades (0 + 0 + 1 < p), so the
    scan stops with the digits of m.
    """
    _require_prime(p)
    if m < 0:
        raise ValueError("m must be >= 0")
    carry = 0
    count = 0
    while m:
        m, d = divmod(m, p)
        carry = 1 if 2 * d + carry >= p else 0
        count += carry
    return count


def block_max_valuation(m: int, k: int, p: int) -> int:
    """Max of valuation(m + i) over the block i = 1..k.  Requires k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return max(valuation(m + i, p) for i in range(1, k + 1))


def block_sum_valuation(m: int, k: int, p: int) -> int:
    """Sum of valuation(m + i) over the block i = 1..k.  Requires k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return sum(valuation(m + i, p) for i in range(1, k + 1))


def large_digit_count(m: int, p: int, L: int) -> int:
    """How many of the first L base-p digits of m are >= ceil(p/2).

    Digits past the top of m count as 0, so values smaller than p**L are
    handled the same way as larger ones.  Each counted digit forces a carry
    when m is doubled, regardless of the incoming carry.
    """
    _require_prime(p)
    if L < 0:
        raise ValueError("L must be >= 0")
    threshold = (p + 1) // 2
    count = 0
    for _ in range(L):
        if not m:
            break
        m, d = divmod(m, p)
        if d >= threshold:
            count += 1
    return count


def truncated_carry_count(m: int, p: int, L: int) -> int:
    """Carries produced at positions 0..L-1 when doubling m mod p**L.

    Runs the carry recursion next = [2*digit + carry >= p] from carry 0 over
    exactly L digit positions of the residue.
    """
    _require_prime(p)
    if L < 0:
        raise ValueError("L must be >= 0")
    carry = 0
    count = 0
    for _ in range(L):
        m, d = divmod(m, p)
        carry = 1 if 2 * d + carry >= p else 0
        count += carry
    return count


def digit_sum(m: int, p: int) -> int:
    """Sum of all base-p digits of m."""
    _require_prime(p)
    if m < 0:
        raise ValueError("m must be >= 0")
    total = 0
    while m:
        m, d = divmod(m, p)
        total += d
    return total


@dataclass(frozen=True)
class ValuationProfile:
    """Per-prime valuation snapshot for a pair (m, k).

    Field names double as the wire schema of the ``verify`` report:
    kappa is the doubling carry count, v_max / w_sum the max / sum of
    valuations over m+1..m+k, and nu_binom_mk the valuation of C(m+k, k).
    """

    p: int
    kappa: int
    v_max: int
    w_sum: int
    nu_k_factorial: int
    nu_binom_mk: int


def valuation_profile(m: int, k: int, p: int) -> ValuationProfile:
    """Compute the full per-prime profile for (m, k) with k >= 1."""
    return ValuationProfile(
        p=p,
        kappa=carry_count(m, p),
        v_max=block_max_valuation(m, k, p),
        w_sum=block_sum_valuation(m, k, p),
        nu_k_factorial=factorial_valuation(k, p),
        nu_binom_mk=binomial_valuation(m + k, k, p),
    )
