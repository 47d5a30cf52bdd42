"""Complete sums of Legendre symbols over a residue system mod p.

``brute_char_sum`` is the oracle; the two closed forms below are the
standard evaluations for a product of two shifted symbols and for a
quadratic argument.
"""

from __future__ import annotations

from typing import Sequence

from .modarith import OddPrime, legendre_symbol

__all__ = ["brute_char_sum", "shifted_product_sum", "quadratic_char_sum", "MAX_DEGREE"]

MAX_DEGREE = 6


def poly_eval_mod(coeffs: Sequence[int], t: int, p: int) -> int:
    """Horner evaluation of an ascending coefficient list at t, mod p."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * t + c) % p
    return acc


def brute_char_sum(coeffs: Sequence[int], p: int) -> int:
    """Sum of (f(t)/p) over t mod p, ``coeffs`` in ascending degree."""
    p = OddPrime(p)
    if len(coeffs) - 1 > MAX_DEGREE:
        raise ValueError(f"degree {len(coeffs) - 1} exceeds {MAX_DEGREE}")
    return sum(legendre_symbol(poly_eval_mod(coeffs, t, p), p) for t in range(p))


def shifted_product_sum(n1: int, n2: int, p: int) -> int:
    """sum_x ((n1 + x)/p) ((n2 + x)/p) = p - 1 if p | n1 - n2, else -1."""
    p = OddPrime(p)
    return p - 1 if (n1 - n2) % p == 0 else -1


def quadratic_char_sum(a: int, b: int, c: int, p: int) -> int:
    """sum_t ((a t^2 + b t + c)/p).

    Equals (p-1)(a/p) when p divides the discriminant and -(a/p)
    otherwise. With p | a but p not dividing b the argument is linear
    in t and the sum is 0. Raises ValueError when both a and b vanish
    mod p, since the sum then depends on c alone.
    """
    p = OddPrime(p)
    if a % p == 0:
        if b % p == 0:
            raise ValueError("a and b both vanish mod p")
        return 0
    chi_a = legendre_symbol(a, p)
    if (b * b - 4 * a * c) % p == 0:
        return (p - 1) * chi_a
    return -chi_a
