"""Scan [M, 2M] for integers whose base-p expansions force the divisibility.

From a scale M and slope c the block length is k = floor(c log M); an m is
"good" either in the counting sense (enough large digits, no valuation spike,
per prime up to 2k) or in the direct sense (max block valuation bounded by
the doubling carry count, which is the inequality that actually proves the
divisibility).  The census tallies the bad sets exactly and compares them
with their analytic bounds.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _vecops
from .divisibility import Triple, factorial_divides
from .primes import primes_up_to
from .valuations import block_max_valuation, carry_count, large_digit_count

MODES = ("direct", "paper")

# int64 headroom guard for the vectorized residue tests.
_MOD_LIMIT = 1 << 62


@dataclass(frozen=True)
class SearchParams:
    """Scan configuration; rationals stay exact until a float is unavoidable."""

    M: int
    c: Fraction
    C1: Fraction = Fraction(1, 2)
    C2: Fraction = Fraction(2)
    eta: Fraction = Fraction(1, 10)
    t_policy: str = "paper-10loglog"
    mode: str = "direct"
    epsilon: Fraction = Fraction(1, 5)


@dataclass(frozen=True)
class PrimeRow:
    """Derived quantities for one prime: digit depth L, large-digit mean mu, spike floor J."""

    p: int
    L: int
    theta: Fraction
    mu: Fraction
    J: int


@dataclass(frozen=True)
class DerivedParams:
    M: int
    k: int
    t: int
    rows: tuple[PrimeRow, ...]

    def row(self, p: int) -> PrimeRow:
        for r in self.rows:
            if r.p == p:
                return r
        raise KeyError(f"no derived row for p = {p}")

    def weak_threshold_holds(self) -> bool:
        """Whether mu_p / 2 >= J_p + t + 3 for every prime (exact rationals).

        At desk scales this usually fails, which is exactly why the counting
        predicates alone do not certify divisibility here; reported per run.
        """
        return all(r.mu / 2 >= r.J + self.t + 3 for r in self.rows)


@dataclass(frozen=True)
class PrimeWitness:
    p: int
    x_p: int
    v_p: int
    kappa_p: int
    j_p_plus_t: int


@dataclass(frozen=True)
class GoodCertificate:
    m: int
    triple: Triple
    witnesses: tuple[PrimeWitness, ...]
    window_ok: bool
    band_ok: bool
    divisibility_verified: bool


@dataclass(frozen=True)
class CensusRow:
    p: int
    L: int
    mu: Fraction
    J: int
    t: int
    bad_carry_count: int
    bad_carry_bound: float
    bad_spike_count: int
    bad_spike_bound: float
    within_bounds: bool


@dataclass(frozen=True)
class CensusReport:
    M: int
    k: int
    t: int
    rows: tuple[CensusRow, ...]
    bad_union_count: int
    interval_size: int


@dataclass(frozen=True)
class ScanOutcome:
    params: SearchParams
    derived: DerivedParams
    certificate: GoodCertificate | None
    census: CensusReport | None


def _floor_power_ratio(M: int, num: int, den: int, p: int) -> int:
    """Largest L >= 0 with p**(den*L) <= M**num, i.e. floor((num/den) log M / log p).

    Exact integer comparison; no float thresholds anywhere near the predicates.
    """
    target = M**num
    step = p**den
    L = 0
    acc = step
    while acc <= target:
        L += 1
        acc *= step
    return L


def _t_value(policy: str, M: int) -> int:
    if policy == "paper-10loglog":
        return math.ceil(10 * math.log(math.log(M)))
    if policy == "appendix-loglog":
        return math.ceil(math.log(math.log(M)))
    if policy.startswith("fixed:"):
        t0 = int(policy.split(":", 1)[1])
        if t0 < 0:
            raise ValueError("fixed t must be >= 0")
        return t0
    raise ValueError(f"unknown t policy {policy!r}")


def derive_params(sp: SearchParams) -> DerivedParams:
    """Expand a SearchParams into k, t, and the per-prime table up to 2k."""
    if sp.M < 3:
        raise ValueError("M must be >= 3 so that log log M is positive")
    if sp.c <= 0:
        raise ValueError("c must be positive")
    if not 0 < sp.eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    k = math.floor(float(sp.c) * math.log(sp.M))
    if k < 1:
        raise ValueError(f"c*log M = {float(sp.c) * math.log(sp.M):.3f} gives k = 0; raise M or c")
    t = _t_value(sp.t_policy, sp.M)
    one_minus_eta = 1 - sp.eta
    rows = []
    for p in primes_up_to(2 * k):
        L = _floor_power_ratio(sp.M, one_minus_eta.numerator, one_minus_eta.denominator, p)
        theta = Fraction(1, 2) if p == 2 else Fraction(p - 1, 2 * p)
        J = 0
        while p ** (J + 1) <= k:
            J += 1
        rows.append(PrimeRow(p=p, L=L, theta=theta, mu=L * theta, J=J))
    return DerivedParams(M=sp.M, k=k, t=t, rows=tuple(rows))


def is_bad_carry(m: int, p: int, dp: DerivedParams) -> bool:
    """Too few large digits: X_p(m) < mu_p / 2, compared in exact rationals."""
    row = dp.row(p)
    x = large_digit_count(m, p, row.L)
    return 2 * x * row.mu.denominator < row.mu.numerator


def is_bad_spike(m: int, p: int, dp: DerivedParams) -> bool:
    """Some m+i carries an unusually high power of p: V_p(m, k) >= J_p + t."""
    row = dp.row(p)
    return block_max_valuation(m, dp.k, p) >= row.J + dp.t


def is_good(m: int, dp: DerivedParams, mode: str = "direct") -> bool:
    """Goodness of m for every prime p <= 2k, in the requested sense."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if mode == "direct":
        return all(
            block_max_valuation(m, dp.k, r.p) <= carry_count(m, r.p) for r in dp.rows
        )
    if mode == "paper":
        return all(
            not is_bad_carry(m, r.p, dp) and not is_bad_spike(m, r.p, dp) for r in dp.rows
        )
    raise ValueError(f"unknown mode {mode!r}")


def _bad_masks(ms: np.ndarray, row: PrimeRow, k: int, t: int) -> tuple[np.ndarray, np.ndarray]:
    """(bad_carry, bad_spike) boolean masks for a contiguous ascending block ms."""
    x = _vecops.large_digit_count_vec(ms, row.p, row.L)
    bad_carry = 2 * x * row.mu.denominator < row.mu.numerator
    q = row.p ** (row.J + t)
    if q <= _MOD_LIMIT:
        r = (-ms) % q
        bad_spike = (r >= 1) & (r <= min(k, q - 1))
        if k >= q:
            bad_spike |= r == 0
    else:
        # q exceeds every m in range; m + i can only hit the single value q - i.
        bad_spike = np.zeros(len(ms), dtype=bool)
        lo, hi = int(ms[0]), int(ms[-1])
        for i in range(1, k + 1):
            if lo <= q - i <= hi:
                bad_spike[q - i - lo] = True
    return bad_carry, bad_spike


def _good_mask(ms: np.ndarray, dp: DerivedParams, mode: str) -> np.ndarray:
    good = np.ones(len(ms), dtype=bool)
    for row in dp.rows:
        if mode == "direct":
            vmax, _ = _vecops.block_valuations_vec(ms, dp.k, row.p)
            kappa = _vecops.carry_count_vec(ms, row.p)
            good &= vmax <= kappa
        else:
            bad_carry, bad_spike = _bad_masks(ms, row, dp.k, dp.t)
            good &= ~(bad_carry | bad_spike)
        if not good.any():
            break
    return good


def _chunks(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    return [(s, min(s + size, hi)) for s in range(lo, hi, size)]


def _certificate(m: int, dp: DerivedParams, sp: SearchParams, verified: bool) -> GoodCertificate:
    triple = Triple.from_m_k(m, dp.k)
    witnesses = tuple(
        PrimeWitness(
            p=r.p,
            x_p=large_digit_count(m, r.p, r.L),
            v_p=block_max_valuation(m, dp.k, r.p),
            kappa_p=carry_count(m, r.p),
            j_p_plus_t=r.J + dp.t,
        )
        for r in dp.rows
    )
    log_n = math.log(triple.n)
    window_ok = float(sp.C1) * log_n < dp.k < float(sp.C2) * log_n
    lo_side = min(triple.a, triple.b)
    hi_side = max(triple.a, triple.b)
    band_ok = sp.epsilon * triple.n <= lo_side and hi_side <= (1 - sp.epsilon) * triple.n
    return GoodCertificate(
        m=m,
        triple=triple,
        witnesses=witnesses,
        window_ok=window_ok,
        band_ok=band_ok,
        divisibility_verified=verified,
    )


def scan(
    sp: SearchParams,
    threads: int = 1,
    chunk_size: int = 1 << 14,
    with_census_on_miss: bool = True,
) -> ScanOutcome:
    """Return the first certifiable m in [M, 2M], or a census of the miss.

    Candidates are taken in ascending m; a candidate is certified only after
    (i) the direct inequality holds for every prime p <= 2k and (ii) the
    independent factorial-divisibility oracle confirms the triple.  In paper
    mode candidates failing (i) or (ii) are skipped (expected at desk scale,
    where the weak-threshold inequality is out of reach); in direct mode a
    failure of (ii) would contradict the proof chain and raises.
    """
    dp = derive_params(sp)
    if sp.mode not in MODES:
        raise ValueError(f"unknown mode {sp.mode!r}")
    if not sp.C1 < sp.c < sp.C2:
        raise ValueError("emitting window triples requires C1 < c < C2")
    if not 0 < sp.C1 < sp.C2:
        raise ValueError("need 0 < C1 < C2")
    if not 0 < sp.epsilon < Fraction(1, 2):
        raise ValueError("epsilon must lie in (0, 1/2)")

    def worker(bounds: tuple[int, int]) -> list[int]:
        s, e = bounds
        ms = np.arange(s, e, dtype=np.int64)
        return [int(v) for v in ms[_good_mask(ms, dp, sp.mode)]]

    def accept(m: int) -> GoodCertificate | None:
        if sp.mode == "paper" and not is_good(m, dp, "direct"):
            return None
        verified = factorial_divides(Triple.from_m_k(m, dp.k))
        if not verified:
            if sp.mode == "direct":
                raise RuntimeError(
                    f"direct-mode good m = {m} failed the independent divisibility oracle"
                )
            return None
        return _certificate(m, dp, sp, verified=True)

    chunks = _chunks(sp.M, 2 * sp.M + 1, chunk_size)
    cert = _first_accepted(chunks, worker, accept, threads)
    report = None
    if cert is None and with_census_on_miss:
        report = census(sp, threads=threads, chunk_size=chunk_size)
    return ScanOutcome(params=sp, derived=dp, certificate=cert, census=report)


def _first_accepted(chunks, worker, accept, threads):
    """First accepted candidate, scanning chunks in order (wave-parallel)."""
    if threads <= 1:
        for ch in chunks:
            for m in worker(ch):
                hit = accept(m)
                if hit is not None:
                    return hit
        return None
    with ThreadPoolExecutor(max_workers=threads) as ex:
        for start in range(0, len(chunks), threads):
            wave = chunks[start : start + threads]
            for cands in ex.map(worker, wave):
                for m in cands:
                    hit = accept(m)
                    if hit is not None:
                        return hit
    return None


def census(sp: SearchParams, threads: int = 1, chunk_size: int = 1 << 16) -> CensusReport:
    """Exact |BadCarry_p| and |BadSpike_p| over [M, 2M] beside their bounds.

    Counts merge by addition over disjoint chunks, so the result does not
    depend on the partition or the thread count.
    """
    dp = derive_params(sp)
    n_rows = len(dp.rows)

    def worker(bounds: tuple[int, int]):
        s, e = bounds
        ms = np.arange(s, e, dtype=np.int64)
        any_bad = np.zeros(len(ms), dtype=bool)
        counts = []
        for row in dp.rows:
            bad_carry, bad_spike = _bad_masks(ms, row, dp.k, dp.t)
            counts.append((int(bad_carry.sum()), int(bad_spike.sum())))
            any_bad |= bad_carry | bad_spike
        return counts, int(any_bad.sum())

    chunks = _chunks(sp.M, 2 * sp.M + 1, chunk_size)
    carry_counts = [0] * n_rows
    spike_counts = [0] * n_rows
    union = 0
    if threads <= 1:
        results = map(worker, chunks)
    else:
        ex = ThreadPoolExecutor(max_workers=threads)
        results = ex.map(worker, chunks)
    for counts, chunk_union in results:
        union += chunk_union
        for i, (bc, bs) in enumerate(counts):
            carry_counts[i] += bc
            spike_counts[i] += bs
    if threads > 1:
        ex.shutdown()

    interval = sp.M + 1
    rows = []
    for i, row in enumerate(dp.rows):
        carry_bound = interval * math.exp(-float(row.mu) / 8.0) + 2.0 * float(row.p**row.L)
        spike_bound = dp.k * (float(Fraction(interval, row.p ** (row.J + dp.t))) + 2.0)
        rows.append(
            CensusRow(
                p=row.p,
                L=row.L,
                mu=row.mu,
                J=row.J,
                t=dp.t,
                bad_carry_count=carry_counts[i],
                bad_carry_bound=carry_bound,
                bad_spike_count=spike_counts[i],
                bad_spike_bound=spike_bound,
                within_bounds=carry_counts[i] <= carry_bound and spike_counts[i] <= spike_bound,
            )
        )
    return CensusReport(
        M=sp.M,
        k=dp.k,
        t=dp.t,
        rows=tuple(rows),
        bad_union_count=union,
        interval_size=interval,
    )
