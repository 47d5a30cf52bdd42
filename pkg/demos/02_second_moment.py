"""
Second moment of y^2 = x^3 + T x^2 + 1
======================================

Brute force over t and x mod p, against the exact formula
p^2 - n p - 1 + p * sum_x ((4x^3 + 1)/p), where n counts cube roots of 2.
The formula comes from counting zeros of g(x, y) = (x - y)(x^2 y^2 - (x + y)).
"""

from ecmoments.family_moments import (
    closed_form_A2, count_g_zeros, first_moment, g_zeros_identity, odd_primes, second_moment,
)
from ecmoments.modarith import cube_root_count

print(" p    A1      A2  closed   n  #g=0  identity")
for p in odd_primes(5, 60):
    print(f"{p:3d} {first_moment('main_theorem', p):4d} {second_moment('main_theorem', p):7d}"
          f" {closed_form_A2('main_theorem', p):7d} {cube_root_count(2, p):3d}"
          f" {count_g_zeros(p):5d} {g_zeros_identity(p):9d}")

# For p = 2 mod 3 the fluctuation vanishes and A2 = p^2 - p - 1
print(all(second_moment("main_theorem", p) == p * p - p - 1
          for p in odd_primes(5, 300) if p % 3 == 2))
