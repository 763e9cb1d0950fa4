"""Prime enumeration and primality checks sized for desk-scale experiments."""

from __future__ import annotations

import math

import numpy as np

_SEGMENT = 1 << 17


def is_prime(n: int) -> bool:
    """Deterministic trial-division test; fine for the bases used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def _plain_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by a segmented sieve (flat memory for large n)."""
    if n < 2:
        return []
    base_limit = max(math.isqrt(n), 2)
    base = _plain_sieve(base_limit)
    if base_limit >= n:
        return [int(p) for p in base if p <= n]
    out = [int(p) for p in base]
    lo = base_limit + 1
    while lo <= n:
        hi = min(lo + _SEGMENT, n + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start < hi:
                seg[start - lo :: p] = False
        out.extend(int(m) for m in np.flatnonzero(seg) + lo)
        lo = hi
    return out


def primes_array(n: int) -> np.ndarray:
    """Primes <= n as an int64 array, for the vectorized Legendre kernels."""
    return np.asarray(primes_up_to(n), dtype=np.int64)
