"""Exact modular arithmetic for odd primes.

Everything here works on Python integers, so products never overflow.
The hot loops elsewhere in the package use the numpy residue tables from
:mod:`ecmoments.curve_counts`; the functions in this module are the
scalar reference versions.
"""

from __future__ import annotations

import cmath
import functools
import math

__all__ = [
    "OddPrime",
    "Residue",
    "is_prime",
    "legendre_symbol",
    "legendre_euler",
    "mod_inverse",
    "sqrt_mod",
    "gauss_sum",
    "gauss_sum_closed_form",
    "cube_root_count",
    "quadratic_roots",
]

MAX_PRIME = 2**31

# Deterministic Miller-Rabin witnesses for n < 3,215,031,751.
_MR_BASES = (2, 3, 5, 7)


@functools.lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic primality test, valid for n < 3.2e9."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    if n >= 3_215_031_751:
        raise ValueError(f"{n} is outside the deterministic Miller-Rabin range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class OddPrime(int):
    """An odd prime 2 < p <= 2**31.

    Behaves as a plain ``int``; construction is the only place the
    primality check runs.
    """

    def __new__(cls, value: int) -> "OddPrime":
        if isinstance(value, OddPrime):
            return value
        if isinstance(value, bool) or int(value) != value:
            raise TypeError(f"expected an integer, got {value!r}")
        value = int(value)
        if not 2 < value <= MAX_PRIME:
            raise ValueError(f"{value} is not in (2, 2**31]")
        if not is_prime(value):
            raise ValueError(f"{value} is not prime")
        return super().__new__(cls, value)

    def __repr__(self) -> str:
        return f"OddPrime({int(self)})"


class Residue(int):
    """A residue class representative in ``[0, modulus)``."""

    modulus: OddPrime

    def __new__(cls, value: int, modulus: int) -> "Residue":
        p = OddPrime(modulus)
        obj = super().__new__(cls, int(value) % p)
        obj.modulus = p
        return obj

    def __repr__(self) -> str:
        return f"Residue({int(self)}, {int(self.modulus)})"


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) by the binary reciprocity algorithm."""
    p = OddPrime(p)
    a %= p
    n, m = a, int(p)
    result = 1
    while n:
        while n % 2 == 0:
            n //= 2
            if m % 8 in (3, 5):
                result = -result
        n, m = m, n
        if n % 4 == 3 and m % 4 == 3:
            result = -result
        n %= m
    return result if m == 1 else 0


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion; independent check of
    :func:`legendre_symbol`."""
    p = OddPrime(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def mod_inverse(a: int, p: int) -> Residue:
    p = OddPrime(p)
    if a % p == 0:
        raise ZeroDivisionError(f"{a} is not invertible mod {p}")
    return Residue(pow(a, -1, p), p)


def _tonelli_shanks(a: int, p: int) -> int:
    # a is a non-zero quadratic residue mod p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod(a: int, p: int) -> frozenset:
    """All square roots of ``a`` mod ``p`` as a frozenset of Residues.

    Two roots for a non-zero square, ``{0}`` for zero, empty otherwise.
    """
    p = OddPrime(p)
    a %= p
    if a == 0:
        return frozenset({Residue(0, p)})
    if legendre_symbol(a, p) != 1:
        return frozenset()
    r = _tonelli_shanks(a, p)
    if r * r % p != a:
        raise ArithmeticError(f"square root check failed for {a} mod {p}")
    return frozenset({Residue(r, p), Residue(p - r, p)})


def gauss_sum(p: int) -> complex:
    """Quadratic Gauss sum sum_a (a/p) exp(2 pi i a / p), in floating point."""
    p = OddPrime(p)
    re, im = [], []
    for a in range(1, p):
        chi = legendre_symbol(a, p)
        z = cmath.exp(2j * math.pi * a / p)
        re.append(chi * z.real)
        im.append(chi * z.imag)
    return complex(math.fsum(re), math.fsum(im))


def gauss_sum_closed_form(p: int) -> complex:
    """sqrt(p) for p = 1 mod 4, i*sqrt(p) for p = 3 mod 4."""
    p = OddPrime(p)
    root = math.sqrt(p)
    return complex(root, 0.0) if p % 4 == 1 else complex(0.0, root)


def cube_root_count(a: int, p: int) -> int:
    """Number of x in [1, p-1] with x**3 = a mod p (0, 1 or 3)."""
    p = OddPrime(p)
    a %= p
    if a == 0:
        raise ValueError(f"{p} divides the argument")
    if p % 3 != 1:
        # 3 does not divide p - 1, so cubing permutes the units
        return 1
    return 3 if pow(a, (p - 1) // 3, p) == 1 else 0


def quadratic_roots(a: int, b: int, c: int, p: int) -> frozenset:
    """All y mod p with a*y**2 + b*y + c = 0 (mod p)."""
    p = OddPrime(p)
    if a % p == 0:
        raise ValueError(f"leading coefficient vanishes mod {p}")
    disc = (b * b - 4 * a * c) % p
    inv2a = pow(2 * a, -1, p)
    return frozenset(Residue((-b + r) * inv2a, p) for r in sqrt_mod(disc, p))

