"""Finite-scale density experiments for interval-product and binomial divisibility.

The asymptotic density-1 statements are out of reach of any finite run; these
sweeps report exact counts at a given N so the trends and orderings can be
inspected, and they locate concrete obstruction primes for the sharpness
heuristic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _vecops
from .primes import primes_up_to
from .valuations import (
    binomial_valuation,
    block_sum_valuation,
    carry_count,
    factorial_valuation,
    valuation,
)

KINDS = ("interval-product", "binomial")
K_RULES = ("c-log-m", "exp-c-sqrt-log-m")


@dataclass(frozen=True)
class DensityPoint:
    N: int
    c: Fraction
    kind: str
    k_rule: str
    total: int
    hits: int

    @property
    def fraction(self) -> float:
        return self.hits / self.total


@dataclass(frozen=True)
class ObstructionWitness:
    """A prime certifying non-divisibility: no carries yet p divides the binomial."""

    m: int
    k: int
    p: int
    kappa_p: int
    nu_binom: int


@dataclass(frozen=True)
class GapSummary:
    N: int
    c: Fraction
    c2: Fraction
    p_bound_rule: str
    total: int
    hits: int

    @property
    def fraction(self) -> float:
        return self.hits / self.total


def interval_product_divides(m: int, k: int, exact_limit: int = 2000) -> bool:
    """True iff (m+1)(m+2)...(m+k) divides C(2m, m).

    Per-prime comparison of the block valuation sum against the carry count
    over all primes up to m + k; for m <= exact_limit the verdict is also
    cross-checked by one exact big-integer division.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    verdict = all(
        block_sum_valuation(m, k, p) <= carry_count(m, p) for p in primes_up_to(m + k)
    )
    if m <= exact_limit:
        product = 1
        for i in range(1, k + 1):
            product *= m + i
        exact = math.comb(2 * m, m) % product == 0
        if exact is not verdict:
            raise RuntimeError(f"per-prime and big-integer oracles disagree at (m={m}, k={k})")
    return verdict


def block_k_values(ms: np.ndarray, c: float, k_rule: str) -> np.ndarray:
    """Block length per m: max(1, floor(c log m)) or floor(exp(c sqrt(log m)))."""
    logs = np.log(ms.astype(np.float64))
    if k_rule == "c-log-m":
        k = np.floor(c * logs)
    elif k_rule == "exp-c-sqrt-log-m":
        k = np.floor(np.exp(c * np.sqrt(logs)))
    else:
        raise ValueError(f"unknown k rule {k_rule!r}")
    return np.maximum(k.astype(np.int64), 1)


def _segment_hits(ms: np.ndarray, k: int, kind: str) -> np.ndarray:
    """Divisibility mask for a block of m sharing one k.

    Only primes p <= 2k are tested: above 2k the block holds at most one
    power of p, whose digits force at least as many carries, so both
    divisibilities hold there unconditionally (exercised exhaustively by the
    large-prime acceptance check).
    """
    ok = np.ones(len(ms), dtype=bool)
    for p in primes_up_to(2 * k):
        kappa = _vecops.carry_count_vec(ms, p)
        _, wsum = _vecops.block_valuations_vec(ms, k, p)
        if kind == "interval-product":
            ok &= wsum <= kappa
        else:
            ok &= wsum - factorial_valuation(k, p) <= kappa
        if not ok.any():
            break
    return ok


def density_sweep(
    N: int,
    c_list,
    kind: str = "interval-product",
    k_rule: str = "c-log-m",
    threads: int = 1,
) -> list[DensityPoint]:
    """Exact divisibility fractions over m in [2, N] for each slope c."""
    if N < 100:
        raise ValueError("N must be >= 100")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    ms = np.arange(2, N + 1, dtype=np.int64)
    points = []
    for c in c_list:
        c = Fraction(c)
        if c <= 0:
            raise ValueError("c must be positive")
        kvec = block_k_values(ms, float(c), k_rule)
        # Split into runs of constant k (k is nondecreasing in m).
        cuts = [0, *(np.flatnonzero(np.diff(kvec)) + 1), len(ms)]
        segments = [(cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1)]

        def worker(seg):
            s, e = seg
            return int(_segment_hits(ms[s:e], int(kvec[s]), kind).sum())

        if threads <= 1:
            hits = sum(map(worker, segments))
        else:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                hits = sum(ex.map(worker, segments))
        points.append(DensityPoint(N=N, c=c, kind=kind, k_rule=k_rule, total=len(ms), hits=hits))
    return points


def sharpness_census(N: int, c) -> tuple[int, int]:
    """Count m in [2, N] blocked at p = 2: nu_2(k!) = k - s_2(k) exceeds s_2(m).

    Every counted m fails the interval-product divisibility, since the block
    valuation sum at 2 is at least nu_2(k!) while the carry count is s_2(m).
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    ms = np.arange(2, N + 1, dtype=np.int64)
    kvec = block_k_values(ms, float(c), "c-log-m")
    s2_m = _vecops.digit_sum_vec(ms, 2)
    s2_k = _vecops.digit_sum_vec(kvec, 2)
    blocked = (kvec - s2_k) > s2_m
    return int(blocked.sum()), int(len(ms))


def obstruction_scan(m: int, c: float, delta) -> list[ObstructionWitness]:
    """Obstruction primes in the window (K, (1+delta) K] with K = floor(exp(c sqrt(log m))).

    A witness p has no doubling carries (all base-p digits of m at most
    (p-1)/2) and a least significant digit in {p-K, ..., (p-1)//2}, which
    places a multiple of p inside m+1..m+K; each one is re-verified through
    the binomial valuation and certifies non-divisibility at (m, K).
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    K = math.floor(math.exp(float(c) * math.sqrt(math.log(m))))
    hi = math.floor((1 + delta) * K)
    witnesses = []
    for p in primes_up_to(hi):
        if p <= K:
            continue
        if carry_count(m, p) != 0:
            continue
        lsd = m % p
        if p - K <= lsd <= (p - 1) // 2:
            nu = binomial_valuation(m + K, K, p)
            if nu < 1:
                raise RuntimeError(f"witness p = {p} failed re-verification at (m={m}, K={K})")
            witnesses.append(ObstructionWitness(m=m, k=K, p=p, kappa_p=0, nu_binom=nu))
    return witnesses


def gap_statistics(
    N: int,
    c,
    c2,
    p_bound_rule: str = "2k",
    cp: float | None = None,
) -> GapSummary:
    """Fraction of m <= N whose valuation gaps clear the threshold for all k <= K(m).

    K(m) = floor(exp(c sqrt(log m))).  The requirement at (m, k, p) is
    gap >= c2 * log m / log p when p is under the rule's bound ("2k", or
    "exp-cp-sqrt-log-m" with slope cp), and gap >= 0 otherwise.  Primes above
    2k never produce a negative gap, so only p <= max(bound, 2k) are walked.
    """
    if N < 100:
        raise ValueError("N must be >= 100")
    c = Fraction(c)
    c2 = Fraction(c2)
    if p_bound_rule not in ("2k", "exp-cp-sqrt-log-m"):
        raise ValueError(f"unknown p bound rule {p_bound_rule!r}")
    if p_bound_rule == "exp-cp-sqrt-log-m" and cp is None:
        raise ValueError("rule exp-cp-sqrt-log-m needs cp")
    cf, c2f = float(c), float(c2)
    hits = 0
    total = 0
    for m in range(2, N + 1):
        total += 1
        K = math.floor(math.exp(cf * math.sqrt(math.log(m))))
        if p_bound_rule == "2k":
            p_cap = 2 * K
        else:
            p_cap = math.floor(math.exp(float(cp) * math.sqrt(math.log(m))))
        if _gaps_clear(m, K, p_cap, c2f, p_bound_rule):
            hits += 1
    return GapSummary(
        N=N, c=c, c2=c2, p_bound_rule=p_bound_rule, total=total, hits=hits
    )


def _gaps_clear(m: int, K: int, p_cap: int, c2f: float, rule: str) -> bool:
    log_m = math.log(m)
    for p in primes_up_to(max(2 * K, p_cap)):
        kappa = carry_count(m, p)
        w = 0
        nu_kfac = 0
        for k in range(1, K + 1):
            w += valuation(m + k, p)
            nu_kfac += valuation(k, p)
            gap = kappa - (w - nu_kfac)
            if rule == "2k":
                bounded = p <= 2 * k
            else:
                bounded = p <= p_cap
            need = c2f * log_m / math.log(p) if bounded else 0.0
            if gap < need:
                return False
    return True
