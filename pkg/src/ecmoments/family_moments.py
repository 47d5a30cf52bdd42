"""First and second moments of a_t(p) over one-parameter families.

Moments are always computed by direct enumeration over t and x mod p;
the catalog holds the exact closed forms they are checked against.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Union

import numpy as np

from .curve_counts import CurveModP, chi_table, cubic_values
from .legendre_sums import brute_char_sum
from .modarith import OddPrime, cube_root_count, is_prime, legendre_symbol

__all__ = [
    "BudgetError",
    "FamilyFormatError",
    "FamilySpec",
    "MomentRecord",
    "VerificationReport",
    "CatalogEntry",
    "CATALOG",
    "ONE_PARAM_BUDGET",
    "TWO_PARAM_BUDGET",
    "get_entry",
    "load_family",
    "odd_primes",
    "specialize",
    "family_traces",
    "first_moment",
    "second_moment",
    "moment_record",
    "moment_sweep",
    "second_moment_all_curves",
    "correction_c0",
    "correction_c1",
    "correction_c32",
    "closed_form_A1",
    "closed_form_A2",
    "verify_family",
    "count_g_zeros",
    "g_zeros_identity",
    "nagao_rank_estimate",
]

ONE_PARAM_BUDGET = 1000
TWO_PARAM_BUDGET = 200
MAX_POLY_DEGREE = 4
_INT64 = 2**63

# rows of the t-by-x value matrix evaluated per numpy call
_CHUNK_ELEMENTS = 1 << 22


class BudgetError(ValueError):
    """A brute-force computation was requested beyond its cost cap."""


class FamilyFormatError(ValueError):
    """A family description is malformed or not in short Weierstrass form."""


def _check_poly(name: str, coeffs: Sequence[int]) -> tuple:
    coeffs = tuple(int(c) for c in coeffs)
    if not coeffs:
        coeffs = (0,)
    if len(coeffs) - 1 > MAX_POLY_DEGREE:
        raise FamilyFormatError(f"{name} has degree {len(coeffs) - 1} > {MAX_POLY_DEGREE}")
    for c in coeffs:
        if not -_INT64 <= c < _INT64:
            raise FamilyFormatError(f"{name} coefficient {c} does not fit in 64 bits")
    return coeffs


@dataclass(frozen=True)
class FamilySpec:
    """y^2 = x^3 + a2(T) x^2 + a4(T) x + a6(T), polynomials in ascending degree."""

    name: str
    a2_poly: tuple = (0,)
    a4_poly: tuple = (0,)
    a6_poly: tuple = (0,)
    catalog_id: Optional[str] = None

    def __post_init__(self):
        for attr in ("a2_poly", "a4_poly", "a6_poly"):
            object.__setattr__(self, attr, _check_poly(attr, getattr(self, attr)))

    def shifted(self, k: int) -> "FamilySpec":
        """The family with T replaced by T + k (catalog link dropped)."""

        def shift(coeffs):
            # expand sum c_i (T + k)^i
            out = [0] * len(coeffs)
            for i, c in enumerate(coeffs):
                for j in range(i + 1):
                    out[j] += c * math.comb(i, j) * k ** (i - j)
            return tuple(out)

        return FamilySpec(
            f"{self.name}[T+{k}]",
            shift(self.a2_poly),
            shift(self.a4_poly),
            shift(self.a6_poly),
        )


@dataclass(frozen=True)
class MomentRecord:
    """Exact moments of one family at one prime.

    ``params`` is the number of specializations summed (p for a
    one-parameter family, p^2 for the two-parameter family of all
    curves); the Hasse-based bounds scale with it.
    """

    p: OddPrime
    A1: int
    A2: Optional[int]
    params: int = 0

    def __post_init__(self):
        p = OddPrime(self.p)
        object.__setattr__(self, "p", p)
        n = self.params or p
        object.__setattr__(self, "params", n)
        hasse = 2 * math.sqrt(p) + 1
        if abs(self.A1) > n * hasse:
            raise ValueError(f"|A1| = {abs(self.A1)} exceeds {n} * (2 sqrt(p) + 1)")
        if self.A2 is not None and not 0 <= self.A2 <= n * hasse**2:
            raise ValueError(f"A2 = {self.A2} outside [0, {n} * (2 sqrt(p) + 1)^2]")


@dataclass(frozen=True)
class VerificationReport:
    p: OddPrime
    brute: int
    closed: int
    match: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "match", self.brute == self.closed)


# ---------------------------------------------------------------------------
# correction terms

def correction_c0(p: int) -> int:
    """(-3/p) + (3/p)."""
    return legendre_symbol(-3, p) + legendre_symbol(3, p)


def correction_c1(p: int) -> int:
    """[sum_x ((x^3 - x)/p)]^2."""
    return brute_char_sum([0, -1, 0, 1], p) ** 2


def correction_c32(p: int) -> int:
    """p * sum_x ((4x^3 + 1)/p)."""
    return p * brute_char_sum([1, 0, 0, 4], p)


# ---------------------------------------------------------------------------
# catalog

@dataclass(frozen=True)
class CatalogEntry:
    catalog_id: str
    description: str
    family: Optional[FamilySpec]
    A1: Callable[[int], int]
    A2: Callable[[int], int]
    rank: Optional[int]
    constant_j: bool
    note: str = ""

    @property
    def two_parameter(self) -> bool:
        return self.family is None


def _fam(cid, a2, a4, a6):
    return FamilySpec(cid, a2, a4, a6, catalog_id=cid)


def _main_theorem_A2(p):
    return p * p - cube_root_count(2, p) * p - 1 + correction_c32(p)


def _rank2_A2(p):
    return p * p - p - correction_c1(p) - p * correction_c0(p)


def _split_A2(modulus):
    def a2(p):
        return 2 * p * p - 2 * p if p % modulus == 1 else 0
    return a2


def _zero(p):
    return 0


_ENTRIES = [
    CatalogEntry(
        "all_curves", "y^2 = x^3 + S x + T (two parameters)", None,
        _zero, lambda p: p**3 - p**2, rank=None, constant_j=False,
    ),
    CatalogEntry(
        "j0_quadratic", "y^2 = x^3 - 432 (9T + 1)^2",
        _fam("j0_quadratic", [0], [0], [-432, -432 * 18, -432 * 81]),
        _zero, _split_A2(3), rank=0, constant_j=True,
        note="2p^2 - 2p for p = 1 mod 3, 0 for p = 2 mod 3 (oracle-confirmed; same split as appendix_a)",
    ),
    CatalogEntry(
        "cm4_linear", "y^2 = x^3 + 4(4T + 2) x",
        _fam("cm4_linear", [0], [8, 16], [0]),
        _zero, _split_A2(4), rank=0, constant_j=True,
        note="2p^2 - 2p for p = 1 mod 4, 0 for p = 3 mod 4 (oracle-confirmed; the minus sign gives the same A2)",
    ),
    CatalogEntry(
        "legendre_type", "y^2 = x^3 + (T + 1) x^2 + T x",
        _fam("legendre_type", [1, 1], [0, 1], [0]),
        _zero, lambda p: p * p - 2 * p - 1, rank=0, constant_j=False,
    ),
    CatalogEntry(
        "shifted_cubic", "y^2 = x^3 + x^2 + 2T + 1",
        _fam("shifted_cubic", [1], [0], [1, 2]),
        _zero, lambda p: p * p - 2 * p - p * legendre_symbol(-3, p), rank=0, constant_j=False,
        note="A2 = p^2 - 2p - p(-3/p); T -> 2T + 1 permutes residues, so this equals appendix_b",
    ),
    CatalogEntry(
        "main_theorem", "y^2 = x^3 + T x^2 + 1",
        _fam("main_theorem", [0, 1], [0], [1]),
        lambda p: -p, _main_theorem_A2, rank=1, constant_j=False,
    ),
    CatalogEntry(
        "rank2_t2", "y^2 = x^3 - T^2 x + T^2",
        _fam("rank2_t2", [0], [0, 0, -1], [0, 0, 1]),
        lambda p: -2 * p, _rank2_A2, rank=2, constant_j=False,
        note="A2 = p^2 - p - c1(p) - p c0(p) (oracle-confirmed; c0 carries a factor p)",
    ),
    CatalogEntry(
        "rank2_t4", "y^2 = x^3 - T^2 x + T^4",
        _fam("rank2_t4", [0], [0, 0, -1], [0, 0, 0, 0, 1]),
        lambda p: -2 * p, _rank2_A2, rank=2, constant_j=False,
        note="same closed form as rank2_t2",
    ),
    CatalogEntry(
        "appendix_a", "y^2 = x^3 + T^2",
        _fam("appendix_a", [0], [0], [0, 0, 1]),
        _zero, _split_A2(3), rank=0, constant_j=True,
    ),
    CatalogEntry(
        "appendix_b", "y^2 = x^3 + x^2 + T",
        _fam("appendix_b", [1], [0], [0, 1]),
        _zero, lambda p: p * p - 2 * p - p * legendre_symbol(-3, p), rank=0, constant_j=False,
    ),
]

CATALOG: Dict[str, CatalogEntry] = {e.catalog_id: e for e in _ENTRIES}


def get_entry(catalog_id: str) -> CatalogEntry:
    try:
        return CATALOG[catalog_id]
    except KeyError:
        raise KeyError(
            f"unknown family {catalog_id!r}; known: {', '.join(sorted(CATALOG))}"
        ) from None


def load_family(source: Union[str, os.PathLike]) -> FamilySpec:
    """Read a family from a JSON document with keys name, a2, a4, a6.

    Optional a1 and a3 keys must be all-zero arrays.
    """
    try:
        with open(source) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FamilyFormatError(f"cannot read {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"{source} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FamilyFormatError(f"{source}: expected a JSON object")
    for key in ("a1", "a3"):
        if any(int(c) for c in doc.get(key, [])):
            raise FamilyFormatError(f"{source}: {key} must be zero (short Weierstrass form only)")
    unknown = set(doc) - {"name", "a1", "a2", "a3", "a4", "a6"}
    if unknown:
        raise FamilyFormatError(f"{source}: unexpected fields {sorted(unknown)}")
    try:
        return FamilySpec(
            str(doc.get("name", os.path.basename(str(source)))),
            doc.get("a2", [0]),
            doc.get("a4", [0]),
            doc.get("a6", [0]),
        )
    except (TypeError, ValueError) as exc:
        raise FamilyFormatError(f"{source}: {exc}") from exc


# ---------------------------------------------------------------------------
# brute-force moments

def odd_primes(lo: int, hi: int) -> List[int]:
    return [n for n in range(max(lo, 3), hi + 1) if is_prime(n)]


def _poly_mod_array(coeffs: Sequence[int], t: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(t)
    for c in reversed(coeffs):
        acc = (acc * t + c % p) % p
    return acc


def specialize(family: FamilySpec, t: int, p: int) -> CurveModP:
    p = OddPrime(p)
    vals = []
    for coeffs in (family.a2_poly, family.a4_poly, family.a6_poly):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * t + c) % p
        vals.append(acc)
    return CurveModP(*vals, p)


def family_traces(family: FamilySpec, p: int) -> np.ndarray:
    """a_t(p) for t = 0, ..., p - 1 as an int64 array."""
    p = OddPrime(p)
    chi = chi_table(p)
    t = np.arange(p, dtype=np.int64)
    a2, a4, a6 = (
        _poly_mod_array(c, t, p)[:, None]
        for c in (family.a2_poly, family.a4_poly, family.a6_poly)
    )
    out = np.empty(p, dtype=np.int64)
    rows = max(1, _CHUNK_ELEMENTS // p)
    for start in range(0, p, rows):
        sl = slice(start, start + rows)
        vals = cubic_values(a2[sl], a4[sl], a6[sl], p)
        out[sl] = -chi[vals].sum(axis=1, dtype=np.int64)
    return out


def _resolve(family) -> FamilySpec:
    if isinstance(family, FamilySpec):
        return family
    entry = get_entry(family)
    if entry.family is None:
        raise ValueError(f"{entry.catalog_id} is a two-parameter family")
    return entry.family


def _check_budget(p: int, cap: int) -> None:
    if p > cap:
        raise BudgetError(f"p = {p} exceeds the brute-force budget {cap}")


def first_moment(family, p: int) -> int:
    """sum_t a_t(p)."""
    return int(family_traces(_resolve(family), p).sum())


def second_moment(family, p: int) -> int:
    """sum_t a_t(p)^2."""
    tr = family_traces(_resolve(family), p)
    return int(np.dot(tr, tr))


def moment_record(family, p: int) -> MomentRecord:
    """Both moments from one pass over the traces; enforces the brute-force budget."""
    if isinstance(family, str) and get_entry(family).two_parameter:
        _check_budget(p, TWO_PARAM_BUDGET)
        a1, a2 = _all_curves_moments(p)
        return MomentRecord(p, a1, a2, params=p * p)
    _check_budget(p, ONE_PARAM_BUDGET)
    tr = family_traces(_resolve(family), p)
    return MomentRecord(p, int(tr.sum()), int(np.dot(tr, tr)))


def moment_sweep(family, primes: Iterable[int], workers: int = 1) -> Iterator[MomentRecord]:
    """Moment records for each prime, yielded in the order given.

    With ``workers > 1`` primes are processed on a thread pool; output
    order never depends on the worker count.
    """
    primes = list(primes)
    if workers <= 1:
        for p in primes:
            yield moment_record(family, p)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(lambda q: moment_record(family, q), primes)


def _all_curves_traces(p: int) -> np.ndarray:
    """Matrix of a_{s,t}(p) for y^2 = x^3 + s x + t, indexed [s, t]."""
    p = OddPrime(p)
    chi = chi_table(p).astype(np.int64)
    x = np.arange(p, dtype=np.int64)
    s = np.arange(p, dtype=np.int64)[:, None]
    g = (x * x % p * x + s * x) % p  # g[s, x] = x^3 + s x
    # counts[s, v] = #{x : x^3 + s x = v}
    counts = np.zeros((p, p), dtype=np.int64)
    np.add.at(counts, (np.repeat(np.arange(p), p), g.ravel()), 1)
    # shift[v, t] = chi(v + t)
    shift = chi[(x[:, None] + x[None, :]) % p]
    return -(counts @ shift)


def _all_curves_moments(p: int):
    a = _all_curves_traces(p)
    return int(a.sum()), int((a * a).sum())


def second_moment_all_curves(p: int) -> int:
    """sum over s, t mod p of a_{s,t}(p)^2 for y^2 = x^3 + S x + T."""
    _check_budget(p, TWO_PARAM_BUDGET)
    return _all_curves_moments(p)[1]


# ---------------------------------------------------------------------------
# closed forms and verification

def closed_form_A1(catalog_id: str, p: int) -> int:
    return get_entry(catalog_id).A1(OddPrime(p))


def closed_form_A2(catalog_id: str, p: int) -> int:
    return get_entry(catalog_id).A2(OddPrime(p))


def verify_family(catalog_id: str, p: int) -> VerificationReport:
    entry = get_entry(catalog_id)
    p = OddPrime(p)
    if entry.two_parameter:
        brute = second_moment_all_curves(p)
    else:
        _check_budget(p, ONE_PARAM_BUDGET)
        brute = second_moment(entry.family, p)
    return VerificationReport(p, brute, closed_form_A2(catalog_id, p))


def count_g_zeros(p: int) -> int:
    """#{(x, y) in [1, p-1]^2 : (x - y)(x^2 y^2 - (x + y)) = 0 mod p}."""
    p = OddPrime(p)
    x = np.arange(1, p, dtype=np.int64)[:, None]
    y = np.arange(1, p, dtype=np.int64)[None, :]
    g = ((x - y) % p) * ((x * x % p * (y * y % p) - x - y) % p) % p
    return int(np.count_nonzero(g == 0))


def g_zeros_identity(p: int) -> int:
    """2p - 3 - (number of cube roots of 2) + sum_x ((4x^3 + 1)/p)."""
    p = OddPrime(p)
    return 2 * p - 3 - cube_root_count(2, p) + brute_char_sum([1, 0, 0, 4], p)


def nagao_rank_estimate(family, X: int, workers: int = 1) -> float:
    """-(1/X) sum_{2 < p <= X} (log p / p) A1(p).

    Uses the cataloged A1 when ``family`` names a catalog entry (or is a
    FamilySpec carrying a catalog_id), brute-force A1 otherwise.
    """
    if X < 100:
        raise ValueError("X must be at least 100")
    cid = family if isinstance(family, str) else family.catalog_id
    primes = odd_primes(3, X)
    if cid is not None:
        entry = get_entry(cid)
        if entry.two_parameter:
            raise ValueError("the rank estimate applies to one-parameter families")
        a1 = [entry.A1(p) for p in primes]
    else:
        spec = _resolve(family)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                a1 = list(pool.map(lambda q: first_moment(spec, q), primes))
        else:
            a1 = [first_moment(spec, p) for p in primes]
    total = math.fsum(math.log(p) / p * a for p, a in zip(primes, a1))
    return 0.0 - total / X
