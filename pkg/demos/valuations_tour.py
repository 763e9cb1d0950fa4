"""A small tour of the exact primitives: digits, valuations, and carries.

Everything downstream rests on one identity: the power of p dividing the
central binomial coefficient C(2m, m) equals the number of carries when m
is doubled in base p.  This script walks that identity on concrete numbers.
"""

import math

from carrylab import (
    binomial_valuation,
    carry_count,
    digit_sum,
    digits,
    factorial_valuation,
    valuation_profile,
)

# Base-p digits are little-endian: 13 = 1 + 0*2 + 1*4 + 1*8.
print("digits of 13 in base 2:", digits(13, 2).digits)
print("digits of 10 in base 7:", digits(10, 7).digits)

# Legendre's formula, two ways.
print("\nnu_2(10!) by Legendre:", factorial_valuation(10, 2))
print("nu_2(10!) by factoring:", bin(math.factorial(10))[::-1].index("1"))

# Kummer: carries of m + m in base p = nu_p(C(2m, m)).
print("\nm     carries(2)  nu_2(C)   carries(3)  nu_3(C)   C(2m,m)")
for m in (3, 10, 31, 100):
    c = math.comb(2 * m, m)
    nu2 = binomial_valuation(2 * m, m, 2)
    nu3 = binomial_valuation(2 * m, m, 3)
    print(f"{m:<6}{carry_count(m, 2):<12}{nu2:<10}{carry_count(m, 3):<12}{nu3:<10}{c}")

# At p = 2 the carry count is simply the binary digit sum.
assert all(carry_count(m, 2) == digit_sum(m, 2) for m in range(4000))
print("\ncarry_count(m, 2) == s_2(m) checked for m < 4000")

# The per-prime profile bundles everything one (m, k) pair needs:
# nu_p(C(m+k, k)) = W - nu_p(k!) exactly, and W <= nu_p(k!) + V.
prof = valuation_profile(m=7, k=3, p=2)
print("\nprofile at (m=7, k=3, p=2):", prof)
assert prof.nu_binom_mk == prof.w_sum - prof.nu_k_factorial
