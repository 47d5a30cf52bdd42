"""Point counts for short Weierstrass curves y^2 = x^3 + a2 x^2 + a4 x + a6 mod p."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .modarith import OddPrime

__all__ = [
    "CurveModP",
    "chi_table",
    "trace_a",
    "point_count",
    "point_count_naive",
    "theta_angle",
    "cubic_values",
]


@dataclass(frozen=True)
class CurveModP:
    """Coefficients a2, a4, a6 reduced mod p (a1 = a3 = 0)."""

    a2: int
    a4: int
    a6: int
    p: OddPrime

    def __post_init__(self):
        p = OddPrime(self.p)
        object.__setattr__(self, "p", p)
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, int(getattr(self, name)) % p)

    @property
    def coeffs(self) -> tuple:
        return (self.a2, self.a4, self.a6)

    def discriminant_cubic(self) -> int:
        """Discriminant of x^3 + a2 x^2 + a4 x + a6, mod p.

        Zero exactly when the curve is singular mod p.
        """
        b, c, d = self.a2, self.a4, self.a6
        disc = b * b * c * c - 4 * c**3 - 4 * b**3 * d - 27 * d * d + 18 * b * c * d
        return disc % self.p


@functools.lru_cache(maxsize=64)
def chi_table(p: int) -> np.ndarray:
    """Read-only int8 array whose entry v is the Legendre symbol (v/p)."""
    p = OddPrime(p)
    table = np.full(p, -1, dtype=np.int8)
    x = np.arange(1, (p + 1) // 2, dtype=np.int64)
    table[x * x % p] = 1
    table[0] = 0
    table.setflags(write=False)
    return table


def cubic_values(a2, a4, a6, p: int, x: np.ndarray | None = None) -> np.ndarray:
    """x^3 + a2 x^2 + a4 x + a6 mod p, evaluated over ``x`` (default all of Z/p).

    The coefficients may be scalars or column arrays (one row per curve);
    broadcasting then yields a matrix of values. Each Horner step is
    reduced so int64 never overflows for p <= 2**31.
    """
    if x is None:
        x = np.arange(p, dtype=np.int64)
    acc = (x + a2) % p
    acc = (acc * x + a4) % p
    return (acc * x + a6) % p


def trace_a(curve: CurveModP) -> int:
    """a = -sum_x ((x^3 + a2 x^2 + a4 x + a6)/p), i.e. p minus the affine count."""
    p = curve.p
    chi = chi_table(p)
    values = cubic_values(curve.a2, curve.a4, curve.a6, p)
    return -int(chi[values].sum(dtype=np.int64))


def point_count(curve: CurveModP) -> int:
    """Number of affine solutions (x, y) mod p."""
    return curve.p - trace_a(curve)


def point_count_naive(curve: CurveModP) -> int:
    """Affine point count by enumerating all p^2 pairs. Slow; for checks only."""
    p = curve.p
    n = 0
    for x in range(p):
        rhs = (x**3 + curve.a2 * x * x + curve.a4 * x + curve.a6) % p
        for y in range(p):
            if y * y % p == rhs:
                n += 1
    return n


def theta_angle(a: int, p: int) -> float:
    """Angle theta in [0, pi] with a = 2 sqrt(p) cos(theta)."""
    bound = 2.0 * math.sqrt(p)
    if abs(a) > bound:
        raise ValueError(f"|a| = {abs(a)} exceeds the Hasse bound {bound:.4f} for p = {p}")
    return math.acos(a / bound)
