"""Segmented sieve of Eratosthenes."""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

__all__ = ["primes_up_to", "prime_segments"]


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for q in range(2, math.isqrt(n) + 1):
        if is_p[q]:
            is_p[q * q :: q] = False
    return np.flatnonzero(is_p).astype(np.int64)


def prime_segments(lo: int, hi: int, segment: int = 1 << 20) -> Iterator[np.ndarray]:
    """Yield the primes in [lo, hi] in ascending blocks of at most ``segment`` integers."""
    lo = max(lo, 2)
    if hi < lo:
        return
    base = primes_up_to(math.isqrt(hi))
    for start in range(lo, hi + 1, segment):
        stop = min(start + segment, hi + 1)
        mark = np.ones(stop - start, dtype=bool)
        for q in base:
            q = int(q)
            if q * q >= stop:
                break
            first = max(q * q, -(-start // q) * q)
            mark[first - start :: q] = False
        out = np.flatnonzero(mark) + start
        yield out[out >= 2].astype(np.int64)
