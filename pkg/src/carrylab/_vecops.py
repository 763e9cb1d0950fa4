"""numpy kernels mirroring the scalar primitives for interval sweeps.

All inputs stay within int64: operands are bounded by a few times the scan
scale M (<= ~1e8) and digit moduli by M**0.9, far from overflow.  Tests pin
these kernels against the exact scalar implementations in ``valuations``.
"""

from __future__ import annotations

import numpy as np


def valuation_vec(x: np.ndarray, p: int) -> np.ndarray:
    """Elementwise valuation of positive int64 values."""
    v = np.zeros_like(x)
    cur = x.copy()
    while True:
        div = (cur % p == 0) & (cur > 0)
        if not div.any():
            return v
        v[div] += 1
        cur[div] //= p


def carry_count_vec(m: np.ndarray, p: int) -> np.ndarray:
    """Elementwise doubling carry count in base p."""
    count = np.zeros_like(m)
    carry = np.zeros_like(m)
    cur = m.copy()
    while (cur > 0).any():
        d = cur % p
        carry = (2 * d + carry >= p).astype(np.int64)
        count += carry
        cur //= p
    return count


def digit_sum_vec(m: np.ndarray, p: int) -> np.ndarray:
    """Elementwise base-p digit sum."""
    total = np.zeros_like(m)
    cur = m.copy()
    while (cur > 0).any():
        total += cur % p
        cur //= p
    return total


def large_digit_count_vec(m: np.ndarray, p: int, L: int) -> np.ndarray:
    """Elementwise count of the first L base-p digits that are >= ceil(p/2)."""
    threshold = (p + 1) // 2
    count = np.zeros_like(m)
    cur = m.copy()
    for _ in range(L):
        if not (cur > 0).any():
            break
        count += (cur % p) >= threshold
        cur //= p
    return count


def block_valuations_vec(m: np.ndarray, k: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(max, sum) of valuation(m + i) over i = 1..k, elementwise."""
    vmax = np.zeros_like(m)
    wsum = np.zeros_like(m)
    for i in range(1, k + 1):
        vi = valuation_vec(m + i, p)
        np.maximum(vmax, vi, out=vmax)
        wsum += vi
    return vmax, wsum


def factorial_valuation_per_prime(n: int, primes: np.ndarray) -> np.ndarray:
    """Legendre sum of floor(n / p**j) for each prime in the array."""
    res = np.zeros(primes.shape, dtype=np.int64)
    pj = primes.astype(np.int64).copy()
    active = pj <= n
    while active.any():
        res[active] += n // pj[active]
        pj[active] *= primes[active]
        active &= pj <= n
    return res
