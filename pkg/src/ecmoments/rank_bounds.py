"""Average-rank upper bound from the 1-level density with a Fejer test function.

The test function pair is

    phi(x)     = sin^2(pi sigma x) / (2 pi x)^2
    phi_hat(u) = (sigma - |u|) / 4   for |u| <= sigma, else 0,

and a second moment of the form p^2 - m p + O(1) feeds the prime sum

    S2 = (2 m / log R) sum_p phi_hat(2 log p / log R) log p / p^2,

whose two-term expansion uses C1 = sum_p log p / p^2 and
C2 = sum_p (log p)^2 / p^2 (2 C1 ~ 0.986, 4 C2 ~ 2.966).

The O(log log R / log R) error terms of the explicit formula are not
modelled; reports say so in their metadata.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy import integrate

from .sieve import prime_segments

__all__ = [
    "ROUNDED_2C1",
    "ROUNDED_4C2",
    "SIEVE_CAP",
    "TestFunctionParams",
    "RankBoundReport",
    "phi",
    "phi_hat",
    "fourier_transform_phi",
    "prime_sum_constants",
    "prime_sum_tail_bound",
    "s2_direct",
    "s2_asymptotic",
    "correction_term",
    "average_rank_bound",
]

log = logging.getLogger(__name__)

ROUNDED_2C1 = 0.986
ROUNDED_4C2 = 2.966
SIEVE_CAP = 10**7
# Chebyshev: theta(x) < 1.01624 x for all x > 0 (Rosser-Schoenfeld)
_THETA_RATIO = 1.01624

ERROR_TERM_NOTE = "O(log log R / log R) explicit-formula error terms omitted"


@dataclass(frozen=True)
class TestFunctionParams:
    sigma: float

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class RankBoundReport:
    sigma: float
    log_R: float
    m_E: float
    r: int
    one_over_sigma: float
    correction: float
    bound: float
    constants_used: dict = field(default_factory=dict)
    notes: str = ERROR_TERM_NOTE

    def to_dict(self) -> dict:
        d = asdict(self)
        inputs = {k: d.pop(k) for k in ("r", "sigma", "log_R", "m_E")}
        return {"inputs": inputs, **d}


def phi(x: float, sigma: float) -> float:
    """sin^2(pi sigma x) / (2 pi x)^2, with the limit sigma^2 / 4 at x = 0."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if x == 0:
        return sigma * sigma / 4
    return math.sin(math.pi * sigma * x) ** 2 / (2 * math.pi * x) ** 2


def phi_hat(u: float, sigma: float) -> float:
    """(sigma - |u|) / 4 on [-sigma, sigma], 0 outside."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return (sigma - abs(u)) / 4 if abs(u) <= sigma else 0.0


def fourier_transform_phi(u: float, sigma: float, window: Optional[float] = None) -> float:
    """Numerical integral of phi(x) exp(-2 pi i u x) over |x| <= window.

    ``window`` defaults to 50 / sigma. phi is even, so only the cosine
    part survives. Independent of :func:`phi_hat`; used to check it.
    """
    if window is None:
        window = 50.0 / sigma
    val, _ = integrate.quad(
        lambda x: phi(x, sigma), 0.0, window,
        weight="cos", wvar=2 * math.pi * u, limit=2000, epsabs=1e-10,
    )
    return 2 * val


@functools.lru_cache(maxsize=4)
def _prime_sums(p_cut: int):
    c1, c2 = [], []
    for block in prime_segments(2, p_cut):
        p = block.astype(np.float64)
        lp = np.log(p)
        c1.append(np.sum(lp / (p * p)))
        c2.append(np.sum(lp * lp / (p * p)))
    return math.fsum(c1), math.fsum(c2)


def prime_sum_tail_bound(p_cut: int) -> tuple:
    """Upper bounds for sum_{p > N} log p / p^2 and sum_{p > N} (log p)^2 / p^2.

    Partial summation against theta(x) < 1.01624 x gives
    2 * 1.01624 / N and 1.01624 * (2 log N + 1) / N respectively.
    """
    n = float(p_cut)
    return 2 * _THETA_RATIO / n, _THETA_RATIO * (2 * math.log(n) + 1) / n


def prime_sum_constants(p_cut: int = SIEVE_CAP) -> tuple:
    """(C1, C2) = (sum log p / p^2, sum (log p)^2 / p^2) over primes p <= p_cut."""
    if p_cut < 10**6:
        raise ValueError("p_cut must be at least 10**6")
    c1, c2 = _prime_sums(int(p_cut))
    t1, t2 = prime_sum_tail_bound(p_cut)
    log.info("prime sums to %d: C1=%.8f (tail <= %.2e), C2=%.8f (tail <= %.2e)", p_cut, c1, t1, c2, t2)
    return c1, c2


def s2_direct(sigma: float, log_R: float, m_E: float, p_cap: int = SIEVE_CAP,
              rel_tol: float = 1e-4) -> float:
    """S2 summed directly over primes with 2 log p / log R < sigma.

    The support reaches p < R^{sigma/2}. Primes beyond ``p_cap`` are not
    sieved; their contribution is bounded analytically and a ValueError
    is raised if that bound exceeds ``rel_tol`` of the computed sum.
    """
    TestFunctionParams(sigma)
    if log_R <= 0:
        raise ValueError("log_R must be positive")
    if m_E == 0:
        return 0.0
    half_support = sigma * log_R / 2
    p_end = p_cap if half_support >= math.log(p_cap) else int(math.exp(half_support))
    total = []
    for block in prime_segments(2, p_end):
        p = block.astype(np.float64)
        lp = np.log(p)
        u = 2 * lp / log_R
        w = np.where(u < sigma, (sigma - u) / 4, 0.0)
        total.append(np.sum(w * lp / (p * p)))
    value = 2 * m_E / log_R * math.fsum(total)
    if half_support > math.log(p_cap):
        tail = 2 * abs(m_E) / log_R * phi_hat(2 * math.log(p_cap) / log_R, sigma) * prime_sum_tail_bound(p_cap)[0]
        log.info("s2_direct: primes above %d omitted, tail <= %.3e", p_cap, tail)
        if tail > rel_tol * abs(value):
            raise ValueError(
                f"support reaches p ~ exp({half_support:.1f}); omitted tail {tail:.2e} "
                f"exceeds {rel_tol:g} of the sum"
            )
    return value


def correction_term(sigma: float, log_R: float, m_E: float,
                    c1_times_2: float = ROUNDED_2C1,
                    c2_times_4: float = ROUNDED_4C2) -> float:
    """(0.986/sigma - 2.966/(sigma^2 log R)) m_E / log R."""
    TestFunctionParams(sigma)
    if log_R <= 0:
        raise ValueError("log_R must be positive")
    return (c1_times_2 / sigma - c2_times_4 / (sigma * sigma * log_R)) * m_E / log_R


def s2_asymptotic(sigma: float, log_R: float, m_E: float, **constants) -> float:
    """Two-term expansion of S2: correction_term * phi(0)."""
    return correction_term(sigma, log_R, m_E, **constants) * phi(0.0, sigma)


def average_rank_bound(r: int, sigma: float, log_R: float, m_E: float,
                       constants: str = "paper") -> RankBoundReport:
    """1/sigma + r + 1/2 + correction_term.

    ``constants="paper"`` uses the rounded 0.986 and 2.966;
    ``constants="computed"`` replaces them by 2 C1 and 4 C2
    sieved to 10**7.
    """
    if r < 0 or int(r) != r:
        raise ValueError("r must be a non-negative integer")
    if m_E < 0:
        raise ValueError("m_E must be non-negative")
    TestFunctionParams(sigma)
    used = {"source": constants, "paper": {"2C1": ROUNDED_2C1, "4C2": ROUNDED_4C2}}
    if constants == "paper":
        k1, k2 = ROUNDED_2C1, ROUNDED_4C2
    elif constants == "computed":
        c1, c2 = prime_sum_constants(SIEVE_CAP)
        k1, k2 = 2 * c1, 4 * c2
        used["computed"] = {"C1": c1, "C2": c2, "2C1": k1, "4C2": k2, "p_cut": SIEVE_CAP}
    else:
        raise ValueError(f"constants must be 'paper' or 'computed', not {constants!r}")
    corr = correction_term(sigma, log_R, m_E, k1, k2)
    return RankBoundReport(
        sigma=sigma, log_R=log_R, m_E=m_E, r=int(r),
        one_over_sigma=1 / sigma, correction=corr,
        bound=1 / sigma + r + 0.5 + corr,
        constants_used=used,
    )
