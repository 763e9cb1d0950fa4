"""How often the divisibilities hold as the block grows like c log m.

The asymptotic phase change sits at c = 1/(2 log 2) ~ 0.721 for the interval
product: below it the divisibility holds for almost all m, above it almost
never (eventually).  Finite N only shows the trend; this script prints the
exact fractions and a few concrete obstruction primes.
"""

from fractions import Fraction

from carrylab import density_sweep, obstruction_scan, sharpness_census

N = 20_000
cs = [Fraction(1, 5), Fraction(2, 5), Fraction(7, 10), Fraction(9, 10), Fraction(6, 5)]

print(f"interval-product and binomial fractions at N = {N}:")
print("  c      interval   binomial")
interval = density_sweep(N, cs, kind="interval-product")
binomial = density_sweep(N, cs, kind="binomial")
for pt_i, pt_b in zip(interval, binomial):
    print(f"  {float(pt_i.c):<5}  {pt_i.fraction:<9.4f}  {pt_b.fraction:.4f}")

blocked, total = sharpness_census(N, Fraction(9, 10))
print(f"\nm blocked at p = 2 (nu_2(k!) > s_2(m)) at c = 0.9: {blocked}/{total}")

print("\nobstruction primes above K(m) = floor(exp(sqrt(log m))):")
for m in (10, 1234, 98765, 444444):
    witnesses = obstruction_scan(m, 1.0, Fraction(1, 2))
    desc = ", ".join(f"p={w.p} (nu={w.nu_binom})" for w in witnesses) or "none in window"
    print(f"  m = {m}: {desc}")
