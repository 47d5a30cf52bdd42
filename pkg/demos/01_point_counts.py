"""
Counting points on a single curve
=================================

a(p) = p - #{(x, y) : y^2 = x^3 + a2 x^2 + a4 x + a6 mod p}, computed as a
Legendre-symbol sum and cross-checked by enumerating all pairs.
"""

from ecmoments.curve_counts import CurveModP, point_count, point_count_naive, theta_angle, trace_a
from ecmoments.modarith import legendre_symbol, sqrt_mod

# Legendre symbols and square roots mod 7
print("squares mod 7:", sorted({x * x % 7 for x in range(1, 7)}))
print("(3/7) =", legendre_symbol(3, 7), " sqrt(4) mod 7 =", sorted(map(int, sqrt_mod(4, 7))))

# y^2 = x^3 + 16 has complex multiplication: a(p) = 0 whenever p = 2 mod 3
for p in (5, 7, 11, 13, 17, 19):
    E = CurveModP(0, 0, 16, p)
    a = trace_a(E)
    print(f"p={p:3d}  a={a:3d}  N={point_count(E):3d}  naive N={point_count_naive(E):3d}"
          f"  theta={theta_angle(a, p):.4f}")
