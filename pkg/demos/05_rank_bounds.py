"""
Lower-order terms and the average-rank bound
============================================

A second moment p^2 - m p + O(1) shifts the 1-level density bound by
(0.986/sigma - 2.966/(sigma^2 log R)) m / log R. The two constants are
2 sum log p / p^2 and 4 sum (log p)^2 / p^2, recomputed here by sieving.
"""

import math

from ecmoments.rank_bounds import (
    average_rank_bound, prime_sum_constants, s2_asymptotic, s2_direct,
)

c1, c2 = prime_sum_constants(10**7)
print(f"2 C1 = {2 * c1:.5f}   4 C2 = {4 * c2:.5f}")

log_r = math.log(1e12)
for sigma in (1.0, 2.0):
    rep = average_rank_bound(0, sigma, log_r, 1)
    print(f"sigma={sigma}: 1/sigma={rep.one_over_sigma:.3f} correction={rep.correction:.4f}"
          f" bound=r+{rep.bound:.4f}")
    print(f"   S2 direct={s2_direct(sigma, log_r, 1):.6f} asymptotic={s2_asymptotic(sigma, log_r, 1):.6f}")

# the correction fades as the conductor grows
for exp10 in (6, 12, 24, 48):
    rep = average_rank_bound(0, 1.0, exp10 * math.log(10), 1)
    print(f"log10 R = {exp10:2d}: correction {rep.correction:.4f}")
