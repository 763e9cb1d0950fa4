"""Find a certified triple (a, b, n) with a! b! | n! k! and k inside a log window.

The scan walks m = M, M+1, ... and keeps the first m where, for every prime
p <= 2k, the largest power of p dividing any of m+1..m+k is at most the
doubling carry count of m.  That inequality is what forces the divisibility,
and the certificate is re-verified through the independent factorial oracle.
"""

from fractions import Fraction

from carrylab import SearchParams, scan

params = SearchParams(
    M=10**6,
    c=Fraction(1),       # k = floor(log M) = 13
    C1=Fraction(1, 2),   # want  0.5 log n < k < 2 log n
    C2=Fraction(2),
    epsilon=Fraction(1, 5),
    mode="direct",
)

outcome = scan(params, threads=8)
cert = outcome.certificate
assert cert is not None, "a hit is expected at this scale"

t = cert.triple
print(f"first good m in [{params.M}, {2 * params.M}]: m = {cert.m}")
print(f"triple: a = {t.a}, b = {t.b}, n = {t.n}, gap k = {t.k}")
print(f"window ok: {cert.window_ok}, band ok: {cert.band_ok}")
print(f"divisibility re-verified: {cert.divisibility_verified}")

print("\nper-prime witnesses (need v_p <= kappa_p everywhere):")
print("  p   X_p   V_p   kappa_p   J_p + t")
for w in cert.witnesses:
    print(f"{w.p:>4}{w.x_p:>5}{w.v_p:>6}{w.kappa_p:>8}{w.j_p_plus_t:>10}")
