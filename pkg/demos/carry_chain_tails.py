"""Lower tails of the carry count: exact dynamic programming vs tilted bounds.

Doubling a uniform residue makes the carries a two-state Markov chain.  The
probability of seeing unusually few carries decays exponentially in the
number of digit positions; the rate is governed by the Perron eigenvalue of
the tilted transfer matrix, and for large p approaches the fair-coin rate
I(delta).
"""

import math
from fractions import Fraction

from carrylab import CarryChainSpec, optimal_tilt, rate_function, tail_bounds, transition_matrix

print("transition matrix at p = 3:")
print(transition_matrix(3))

print("\nrate function and optimal tilt:")
for delta in (0.1, 0.3, 0.5, 0.9):
    print(f"  delta = {delta}: I = {rate_function(delta):.6f}, tilt = {optimal_tilt(delta):+.6f}")

print("\nexact tail P(S_L <= sL) against its bounds, s = (1 - delta)/2:")
print("  p    L    delta   exact          tilted bound   chernoff (p=2, s=1/4)")
for p in (2, 3, 13):
    for L in (50, 200):
        spec = CarryChainSpec.from_delta(p, L, Fraction(1, 2))
        res = tail_bounds(spec)
        chern = f"{res.chernoff_bound:.3e}" if res.chernoff_bound is not None else "-"
        print(f"{p:>4} {L:>4}   0.5     {res.exact:.6e}   {res.tilted_bound:.6e}   {chern}")

# The Chernoff bound at p = 2 is the plain binomial bound e^(-mu/8), mu = L/2.
res = tail_bounds(CarryChainSpec.from_delta(2, 512, Fraction(1, 2)))
print(f"\np=2, L=512: exact {res.exact:.3e} <= e^(-512/16) = {math.exp(-32):.3e}")
