"""The p^{3/2} fluctuation in the second moment of y^2 = x^3 + T x^2 + 1.

For this family A2(p) = p^2 - n p - 1 + p * S(p), where n counts cube
roots of 2 and S(p) = sum_x ((4x^3 + 1)/p). S(p) is minus the trace of
the CM curve y^2 = 4x^3 + 1 (isomorphic to y^2 = x^3 + 16), so the
fluctuation divided by p^{3/2} is -2 cos(theta) and sweeps [-2, 2] as
the Frobenius angle equidistributes over split primes.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence

import numpy as np

from .curve_counts import chi_table, theta_angle
from .modarith import OddPrime, cube_root_count
from .sieve import prime_segments

__all__ = [
    "FluctuationRecord",
    "HitReport",
    "fluctuation_record",
    "fluctuation_sweep",
    "interval_hit_report",
    "records_csv",
    "RECORD_HEADER",
]

RECORD_HEADER = ("p", "n32", "fluct", "normalized", "theta")


@dataclass(frozen=True)
class FluctuationRecord:
    p: OddPrime
    n32: int
    fluct: int
    normalized: float
    theta: float

    def __post_init__(self):
        if self.p % 3 == 2 and (self.fluct != 0 or self.n32 != 1):
            raise ValueError(f"p = {self.p} = 2 mod 3 must have fluct 0 and one cube root")
        if abs(self.normalized) > 2 + 1 / math.sqrt(self.p):
            raise ValueError(f"normalized fluctuation {self.normalized} out of range at p = {self.p}")

    def row(self) -> tuple:
        return (int(self.p), self.n32, self.fluct, f"{self.normalized:.15g}", f"{self.theta:.15g}")


def _cm_char_sum(p: int) -> int:
    # sum_x ((4x^3 + 1)/p) in O(p)
    chi = chi_table(p)
    x = np.arange(p, dtype=np.int64)
    v = ((x * x % p) * x % p * 4 + 1) % p
    return int(chi[v].sum(dtype=np.int64))


def fluctuation_record(p: int) -> FluctuationRecord:
    p = OddPrime(p)
    s = _cm_char_sum(p)
    return FluctuationRecord(
        p=p,
        n32=cube_root_count(2, p),
        fluct=p * s,
        normalized=s / math.sqrt(p),
        theta=theta_angle(-s, p),
    )


def fluctuation_sweep(p_min: int, p_max: int, workers: int = 1) -> Iterator[FluctuationRecord]:
    """Records for every prime in [max(p_min, 5), p_max], ascending."""
    lo = max(p_min, 5)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for block in prime_segments(lo, p_max):
            primes = [int(q) for q in block]
            if pool is None:
                yield from map(fluctuation_record, primes)
            else:
                yield from pool.map(fluctuation_record, primes)
    finally:
        if pool is not None:
            pool.shutdown()


@dataclass
class HitReport:
    """Histogram of normalized fluctuations over split primes p = 1 mod 3."""

    p_max: int
    bin_width: float
    edges: List[float]
    counts: List[int]
    theta_edges: List[float]
    theta_counts: List[int]

    @property
    def n_split(self) -> int:
        return sum(self.counts)

    def all_bins_hit(self) -> bool:
        return all(c > 0 for c in self.counts)

    def theta_fractions(self) -> List[float]:
        n = sum(self.theta_counts)
        return [c / n if n else 0.0 for c in self.theta_counts]

    def rows(self) -> Iterator[tuple]:
        n = self.n_split
        for lo, hi, c in zip(self.edges, self.edges[1:], self.counts):
            yield ("normalized", f"{lo:.6g}", f"{hi:.6g}", c, f"{c / n if n else 0.0:.6g}")
        for (lo, hi, c), frac in zip(
            zip(self.theta_edges, self.theta_edges[1:], self.theta_counts), self.theta_fractions()
        ):
            yield ("theta", f"{lo:.6g}", f"{hi:.6g}", c, f"{frac:.6g}")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("kind", "lo", "hi", "count", "fraction"))
        w.writerows(self.rows())
        return buf.getvalue()


def _histogram(values: Sequence[float], lo: float, width: float, n: int) -> List[int]:
    counts = [0] * n
    for v in values:
        k = min(max(int(math.floor((v - lo) / width)), 0), n - 1)
        counts[k] += 1
    return counts


def interval_hit_report(
    p_max: int,
    bin_width: float,
    records: Optional[Iterable[FluctuationRecord]] = None,
    theta_bins: int = 8,
    workers: int = 1,
) -> HitReport:
    """Bin the normalized fluctuations of split primes p <= p_max over [-2, 2].

    Also bins the Frobenius angles over [0, pi] with ``theta_bins`` equal
    bins; for a CM curve these should be close to uniform.
    """
    if not 0 < bin_width <= 4:
        raise ValueError("bin_width must lie in (0, 4]")
    if records is None:
        records = fluctuation_sweep(5, p_max, workers=workers)
    split = [r for r in records if r.p % 3 == 1 and r.p <= p_max]
    n = max(1, math.ceil(4 / bin_width - 1e-9))
    edges = [-2 + k * bin_width for k in range(n)] + [2.0]
    counts = _histogram([r.normalized for r in split], -2.0, bin_width, n)
    tw = math.pi / theta_bins
    theta_edges = [k * tw for k in range(theta_bins)] + [math.pi]
    theta_counts = _histogram([r.theta for r in split], 0.0, tw, theta_bins)
    return HitReport(p_max, bin_width, edges, counts, theta_edges, theta_counts)


def records_csv(records: Iterable[FluctuationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_HEADER)
    w.writerows(r.row() for r in records)
    return buf.getvalue()
