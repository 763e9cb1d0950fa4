"""The two-state carry Markov chain and its lower-tail large deviations.

Doubling a uniform random residue digit by digit makes the carry bits a
Markov chain on {0, 1}.  This module computes its transition matrix, the
tilted transfer matrix and Perron eigenvalue in closed 2x2 form, the
Bernoulli(1/2) rate function and optimal tilt, exact lower-tail
probabilities by an integer dynamic program, and the constructive constant
that turns the eigenvalue bound into a finite-L tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .primes import is_prime

# SplitMix64 constants; the generator is pinned so runs reproduce bit-for-bit.
_SM64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM64_MULT1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_MULT2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class CarryChainSpec:
    """Parameters of one tail evaluation: base p, L positions, threshold s = (1-delta)/2."""

    p: int
    L: int
    s: Fraction
    delta: Fraction
    lam: float

    @classmethod
    def from_delta(cls, p: int, L: int, delta) -> "CarryChainSpec":
        delta = Fraction(delta)
        if not 0 < delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        return cls(p=p, L=L, s=(1 - delta) / 2, delta=delta, lam=optimal_tilt(delta))


@dataclass(frozen=True)
class TailResult:
    """Exact lower-tail probability beside its Chernoff and tilted bounds."""

    exact: float
    chernoff_bound: float | None
    tilted_bound: float
    C_used: float
    rho_used: float


def transition_matrix(p: int) -> np.ndarray:
    """Carry transition matrix P[u, v] = P(next carry = v | current carry = u).

    Row u counts digits a with [2a + u >= p] = v, out of p.  For p = 2 the
    carries are independent coin flips; for odd p the matrix is symmetric
    with diagonal 1/2 + 1/(2p).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    rows = []
    for u in (0, 1):
        carries = sum(1 for a in range(p) if 2 * a + u >= p)
        rows.append([(p - carries) / p, carries / p])
    return np.array(rows, dtype=float)


def tilted_eigenvalue(p: int, lam: float) -> float:
    """Perron eigenvalue of the tilted matrix T[u, v] = P[u, v] * exp(lam * v).

    Closed 2x2 form: largest root of x**2 - tr*x + det.  Equals 1 at lam = 0
    and (1 + exp(lam)) / 2 exactly for p = 2.
    """
    t = transition_matrix(p) * np.array([1.0, math.exp(lam)])
    tr = float(t[0, 0] + t[1, 1])
    # (tr^2 - 4 det) rewritten to avoid cancellation for near-rank-one matrices.
    disc = float(t[0, 0] - t[1, 1]) ** 2 + 4.0 * float(t[0, 1] * t[1, 0])
    return (tr + math.sqrt(disc)) / 2.0


def _perron_constant(p: int, lam: float) -> tuple[float, float]:
    """(rho, C) with C = R**2 from the min-normalized right Perron eigenvector."""
    t = transition_matrix(p) * np.array([1.0, math.exp(lam)])
    rho = tilted_eigenvalue(p, lam)
    # (T - rho I) v = 0  =>  v is parallel to (T01, rho - T00); both entries
    # are positive because rho exceeds the diagonal of a positive matrix.
    v0, v1 = float(t[0, 1]), rho - float(t[0, 0])
    r = max(v0, v1) / min(v0, v1)
    return rho, r * r


def limit_eigenvalue(lam: float) -> float:
    """Large-p limit of the tilted eigenvalue: (1 + exp(lam)) / 2."""
    return (1.0 + math.exp(lam)) / 2.0


def tilt_close_to_limit(p: int, delta, eps: float) -> bool:
    """Whether log rho_p <= log rho_limit + eps at the optimal tilt for delta.

    The threshold prime below which this fails is not constructive, so runs
    report the comparison itself instead of a p0(delta, eps).
    """
    lam = optimal_tilt(delta)
    return math.log(tilted_eigenvalue(p, lam)) <= math.log(limit_eigenvalue(lam)) + eps


def rate_function(delta) -> float:
    """Lower-tail rate for fair coins at threshold s = (1-delta)/2.

    I(delta) = ((1-delta) log(1-delta) + (1+delta) log(1+delta)) / 2.
    """
    d = float(delta)
    if not 0.0 < d < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    return 0.5 * ((1.0 - d) * math.log1p(-d) + (1.0 + d) * math.log1p(d))


def optimal_tilt(delta) -> float:
    """The tilt log(s / (1-s)) = log((1-delta) / (1+delta)) < 0 that attains I(delta)."""
    d = float(delta)
    if not 0.0 < d < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    return math.log((1.0 - d) / (1.0 + d))


def _digit_transition_counts(p: int) -> tuple[dict[int, int], dict[int, int]]:
    """Per carry-in u: (digits that do not carry, digits a with 2a + u >= p)."""
    carry_from = {u: p - (p - u + 1) // 2 for u in (0, 1)}
    keep = {u: p - carry_from[u] for u in (0, 1)}
    return keep, carry_from


def _tail_count(p: int, L: int, s: Fraction) -> tuple[int, int]:
    """(count, p**L): residues r < p**L whose carry count S_L is <= s*L.

    Integer dynamic program over (position, carry state, carries so far);
    counts above the cutoff are dropped since they can only grow.
    """
    s = Fraction(s)
    cutoff = math.floor(s * L)
    if cutoff < 0:
        return 0, p**L
    if cutoff >= L:
        return p**L, p**L
    keep, carry_from = _digit_transition_counts(p)
    # dp[u][c] = number of digit prefixes ending in carry u with c carries.
    dp = [[0] * (cutoff + 1) for _ in (0, 1)]
    dp[0][0] = 1
    for _ in range(L):
        nxt = [[0] * (cutoff + 1) for _ in (0, 1)]
        for u in (0, 1):
            row = dp[u]
            stay, move = keep[u], carry_from[u]
            for c, ways in enumerate(row):
                if not ways:
                    continue
                nxt[0][c] += ways * stay
                if c + 1 <= cutoff:
                    nxt[1][c + 1] += ways * move
        dp = nxt
    total = sum(dp[0]) + sum(dp[1])
    return total, p**L


def carry_count_distribution(p: int, L: int) -> list[int]:
    """Exact counts of residues r < p**L by carry count, as L+1 integers.

    Same dynamic program as the tail, without a cutoff; the counts sum to
    p**L and their partial sums reproduce every exact tail.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    keep, carry_from = _digit_transition_counts(p)
    dp = [[0] * (L + 1) for _ in (0, 1)]
    dp[0][0] = 1
    for _ in range(L):
        nxt = [[0] * (L + 1) for _ in (0, 1)]
        for u in (0, 1):
            row = dp[u]
            stay, move = keep[u], carry_from[u]
            for c, ways in enumerate(row):
                if not ways:
                    continue
                nxt[0][c] += ways * stay
                nxt[1][c + 1] += ways * move
        dp = nxt
    return [dp[0][c] + dp[1][c] for c in range(L + 1)]


def exact_tail(p: int, L: int, s) -> float:
    """Exact P(S_L <= s*L) for a uniform residue mod p**L.

    For p = 2 this is the binomial tail P(Bin(L, 1/2) <= floor(s*L)).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if L < 0:
        raise ValueError("L must be >= 0")
    if L == 0:
        return 1.0
    count, denom = _tail_count(p, L, Fraction(s))
    return float(Fraction(count, denom))


def exact_tail_fraction(p: int, L: int, s) -> Fraction:
    """exact_tail as an exact rational, for oracle comparisons in tests."""
    if L == 0:
        return Fraction(1)
    count, denom = _tail_count(p, L, Fraction(s))
    return Fraction(count, denom)


def tail_bounds(spec: CarryChainSpec) -> TailResult:
    """Exact tail with the tilted bound C * exp(L * (log rho - lam*s)).

    The constant C is R**2 from the min-normalized Perron eigenvector, which
    makes the bound a theorem rather than an existence statement; violation
    raises.  The p = 2, s = 1/4 case also reports the Chernoff bound
    exp(-mu/8) with mu = L/2.
    """
    if spec.lam > 0:
        raise ValueError("the tilted bound needs lam <= 0")
    exact = exact_tail(spec.p, spec.L, spec.s)
    rho, c_used = _perron_constant(spec.p, spec.lam)
    tilted = c_used * math.exp(spec.L * (math.log(rho) - spec.lam * float(spec.s)))
    chernoff = None
    if spec.p == 2 and spec.s == Fraction(1, 4):
        chernoff = math.exp(-spec.L / 16.0)
    if exact > tilted * (1 + 1e-12):
        raise AssertionError(f"exact tail {exact} exceeds tilted bound {tilted}")
    if chernoff is not None and exact > chernoff * (1 + 1e-12):
        raise AssertionError(f"exact tail {exact} exceeds Chernoff bound {chernoff}")
    return TailResult(
        exact=exact,
        chernoff_bound=chernoff,
        tilted_bound=tilted,
        C_used=c_used,
        rho_used=rho,
    )


def mgf_matrix_power(p: int, L: int, lam: float) -> float:
    """E[exp(lam * S_L)] via the transfer matrix: e0^T T(lam)^L 1."""
    t = transition_matrix(p) * np.array([1.0, math.exp(lam)])
    vec = np.array([1.0, 1.0])
    for _ in range(L):
        vec = t @ vec
    return float(vec[0])


def _splitmix64_span(seed: int, start: int, count: int) -> np.ndarray:
    """SplitMix64 outputs for stream indices [start, start + count), as uint64.

    Output i is a pure function of seed + (i+1)*gamma, so any span of the
    stream can be produced without generating its prefix.
    """
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = np.uint64(seed) + idx * _SM64_GAMMA
    z = (z ^ (z >> np.uint64(30))) * _SM64_MULT1
    z = (z ^ (z >> np.uint64(27))) * _SM64_MULT2
    return z ^ (z >> np.uint64(31))


def splitmix64(seed: int, count: int) -> np.ndarray:
    """First `count` outputs of SplitMix64 from `seed`, as uint64."""
    return _splitmix64_span(seed, 0, count)


def sample_carry_counts(p: int, L: int, trials: int, seed: int) -> np.ndarray:
    """Carry counts S_L for `trials` rows of L SplitMix64 digits each.

    Trial t consumes stream words t*L .. t*L + L - 1 (digit = word mod p),
    so the counts do not depend on the internal batching.
    """
    counts = np.zeros(trials, dtype=np.int64)
    batch = max(1, (1 << 22) // max(L, 1))
    for lo in range(0, trials, batch):
        hi = min(lo + batch, trials)
        words = _splitmix64_span(seed, lo * L, (hi - lo) * L).reshape(hi - lo, L)
        digits = (words % np.uint64(p)).astype(np.int64)
        carry = np.zeros(hi - lo, dtype=np.int64)
        total = np.zeros(hi - lo, dtype=np.int64)
        for j in range(L):
            carry = (2 * digits[:, j] + carry >= p).astype(np.int64)
            total += carry
        counts[lo:hi] = total
    return counts


def empirical_chain_check(p: int, L: int, trials: int, seed: int) -> float:
    """Monte Carlo estimate of E[S_L] / L from the pinned generator.

    The stationary carry distribution is uniform on {0, 1}, so the estimate
    approaches 1/2 (up to an O(1/L) burn-in term from starting at carry 0).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if L == 0:
        return 0.0
    counts = sample_carry_counts(p, L, trials, seed)
    return float(counts.mean() / L)
