import json
import math

import pytest

from ecmoments import family_moments as fm
from ecmoments.family_moments import (
    CATALOG,
    BudgetError,
    FamilyFormatError,
    FamilySpec,
    MomentRecord,
    closed_form_A1,
    closed_form_A2,
    correction_c0,
    correction_c1,
    correction_c32,
    count_g_zeros,
    first_moment,
    g_zeros_identity,
    load_family,
    moment_sweep,
    nagao_rank_estimate,
    second_moment,
    second_moment_all_curves,
    specialize,
    verify_family,
)

from conftest import chi_by_squares, small_primes

ONE_PARAM = [cid for cid, e in CATALOG.items() if not e.two_parameter]
MAIN = CATALOG["main_theorem"].family


def poly(coeffs, t):
    return sum(c * t**i for i, c in enumerate(coeffs))


def moments_by_loops(family, p):
    """A1, A2 with pure-Python loops and the square-set Legendre oracle."""
    squares = {x * x % p for x in range(1, p)}

    def chi(v):
        v %= p
        return 0 if v == 0 else (1 if v in squares else -1)

    a1 = a2 = 0
    for t in range(p):
        b, c, d = (poly(family.a2_poly, t), poly(family.a4_poly, t), poly(family.a6_poly, t))
        a = -sum(chi(x**3 + b * x * x + c * x + d) for x in range(p))
        a1 += a
        a2 += a * a
    return a1, a2


def test_specialize_examples():
    assert specialize(MAIN, 0, 5).coeffs == (0, 0, 1)
    assert specialize(MAIN, 7, 5).coeffs == (2, 0, 1)
    assert specialize(CATALOG["rank2_t2"].family, 3, 7).coeffs == (0, 5, 2)


@pytest.mark.parametrize("cid", ONE_PARAM)
def test_moments_match_loop_oracle(cid):
    family = CATALOG[cid].family
    for p in small_primes(3, 31):
        assert (first_moment(family, p), second_moment(family, p)) == moments_by_loops(family, p)


@pytest.mark.parametrize(
    "cid, p, expected", [("main_theorem", 5, -5), ("rank2_t2", 7, -14), ("appendix_a", 7, 0)]
)
def test_first_moment_examples(cid, p, expected):
    assert first_moment(cid, p) == expected


@pytest.mark.parametrize(
    "cid, p, expected", [("main_theorem", 5, 19), ("main_theorem", 7, 55), ("appendix_a", 7, 84)]
)
def test_second_moment_examples(cid, p, expected):
    assert second_moment(cid, p) == expected
    assert moments_by_loops(CATALOG[cid].family, p)[1] == expected


def all_curves_by_loops(p):
    chi = [chi_by_squares(v, p) for v in range(p)]
    total = 0
    for s in range(p):
        for t in range(p):
            a = -sum(chi[(x**3 + s * x + t) % p] for x in range(p))
            total += a * a
    return total


@pytest.mark.parametrize("p, expected", [(5, 100), (7, 294), (11, 1210)])
def test_all_curves_examples(p, expected):
    assert second_moment_all_curves(p) == expected
    assert all_curves_by_loops(p) == expected


def test_all_curves_closed_form():
    for p in small_primes(3, 60):
        assert second_moment_all_curves(p) == p**3 - p**2


def test_all_curves_budget():
    with pytest.raises(BudgetError):
        second_moment_all_curves(211)


@pytest.mark.parametrize("p, expected", [(7, 0), (11, 0), (13, 2)])
def test_c0_examples(p, expected):
    assert correction_c0(p) == expected
    assert chi_by_squares(-3, p) + chi_by_squares(3, p) == expected


@pytest.mark.parametrize("p, expected", [(7, 0), (11, 0), (5, 4)])
def test_c1_examples(p, expected):
    assert correction_c1(p) == expected


def test_c1_vanishes_for_3_mod_4_only():
    # x -> -x flips the sign of x^3 - x exactly when (-1/p) = -1
    for p in small_primes(5, 300):
        if p % 4 == 3:
            assert correction_c1(p) == 0
        else:
            assert correction_c1(p) > 0


@pytest.mark.parametrize("p, expected", [(5, 0), (7, 7), (11, 0)])
def test_c32_examples(p, expected):
    assert correction_c32(p) == expected


@pytest.mark.parametrize(
    "cid, p, expected",
    [("main_theorem", 5, 19), ("legendre_type", 7, 34), ("rank2_t2", 7, 42)],
)
def test_closed_form_examples(cid, p, expected):
    assert closed_form_A2(cid, p) == expected


def test_closed_form_unknown_id():
    with pytest.raises(KeyError):
        closed_form_A2("no_such_family", 7)


@pytest.mark.parametrize(
    "cid, p, value", [("appendix_a", 7, 84), ("appendix_b", 7, 28), ("main_theorem", 11, 109)]
)
def test_verify_examples(cid, p, value):
    rep = verify_family(cid, p)
    assert rep.match and rep.brute == rep.closed == value


@pytest.mark.parametrize("cid", ONE_PARAM)
def test_catalog_exact_up_to_300(cid):
    for p in small_primes(5, 300):
        rep = verify_family(cid, p)
        assert rep.match, (cid, p, rep)
        assert first_moment(cid, p) == closed_form_A1(cid, p)


def test_first_moment_closed_form_holds_at_3():
    for cid in ONE_PARAM:
        assert first_moment(cid, 3) == closed_form_A1(cid, 3)


def test_verify_budget():
    with pytest.raises(BudgetError):
        verify_family("main_theorem", 1009)


def test_c0_needs_factor_p():
    # the variant with an unscaled c0 only agrees when c0 = 0, i.e. p = 3 mod 4
    for p in small_primes(5, 100):
        unscaled = p * p - p - correction_c1(p) - correction_c0(p)
        if correction_c0(p) == 0:
            assert second_moment("rank2_t2", p) == unscaled
        else:
            assert second_moment("rank2_t2", p) != unscaled


def test_shifted_cubic_needs_factor_p():
    for p in small_primes(5, 100):
        assert second_moment("shifted_cubic", p) != p * p - 2 * p - chi_by_squares(-3, p)
        assert second_moment("shifted_cubic", p) == second_moment("appendix_b", p)


def test_j0_quadratic_split_is_p_mod_3():
    for p in small_primes(5, 100):
        expected = 2 * p * p - 2 * p if p % 3 == 1 else 0
        assert second_moment("j0_quadratic", p) == expected


def test_cm4_linear_split_is_p_mod_4_for_both_signs():
    minus = FamilySpec("cm4_minus", [0], [-8, -16], [0])
    for p in small_primes(5, 100):
        expected = 2 * p * p - 2 * p if p % 4 == 1 else 0
        assert second_moment("cm4_linear", p) == expected
        assert second_moment(minus, p) == expected


@pytest.mark.parametrize("cid", ONE_PARAM)
def test_moments_invariant_under_shift(cid):
    family = CATALOG[cid].family
    for p in small_primes(3, 50):
        shifted = family.shifted(p)
        assert second_moment(shifted, p) == second_moment(family, p)
        assert first_moment(shifted, p) == first_moment(family, p)


def test_michel_size_for_nonconstant_j():
    for cid in ONE_PARAM:
        if CATALOG[cid].constant_j:
            continue
        for p in small_primes(5, 300):
            assert abs(second_moment(cid, p) - p * p) <= 5 * p**1.5


@pytest.mark.parametrize("p, expected", [(5, 6), (7, 12), (11, 18)])
def test_g_zero_examples(p, expected):
    assert count_g_zeros(p) == expected
    assert g_zeros_identity(p) == expected


def test_g_zeros_by_loops():
    for p in small_primes(3, 40):
        brute = sum(1 for x in range(1, p) for y in range(1, p)
                    if (x - y) * (x * x * y * y - x - y) % p == 0)
        assert count_g_zeros(p) == brute


def test_g_zero_identity_up_to_300():
    for p in small_primes(3, 300):
        assert count_g_zeros(p) == g_zeros_identity(p)


def test_moment_record_bounds():
    MomentRecord(7, -7, 55)
    with pytest.raises(ValueError):
        MomentRecord(7, 0, 10**6)
    with pytest.raises(ValueError):
        MomentRecord(7, 0, -1)
    # two-parameter sums scale the bound by p^2
    MomentRecord(11, 0, 1210, params=121)


def test_moment_sweep_order_independent_of_workers():
    primes = small_primes(3, 200)
    one = list(moment_sweep("main_theorem", primes, workers=1))
    four = list(moment_sweep("main_theorem", primes, workers=4))
    assert one == four
    assert [r.p for r in one] == primes


def test_family_spec_validation():
    with pytest.raises(FamilyFormatError):
        FamilySpec("too_deep", [0, 0, 0, 0, 0, 1])
    with pytest.raises(FamilyFormatError):
        FamilySpec("too_big", [2**64])


def test_load_family(tmp_path):
    path = tmp_path / "fam.json"
    path.write_text(json.dumps({"name": "mine", "a2": [0, 1], "a4": [0], "a6": [1]}))
    fam = load_family(path)
    assert fam.a2_poly == (0, 1) and fam.a6_poly == (1,)
    assert second_moment(fam, 13) == closed_form_A2("main_theorem", 13)


@pytest.mark.parametrize(
    "doc",
    [
        {"name": "x", "a1": [1], "a6": [1]},
        {"name": "x", "a3": [0, 2], "a6": [1]},
        {"name": "x", "a6": [1], "b": [2]},
        {"name": "x", "a6": [1, 2, 3, 4, 5, 6]},
        [1, 2],
    ],
)
def test_load_family_rejects(tmp_path, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(FamilyFormatError):
        load_family(path)


def test_load_family_zero_a1_ok(tmp_path):
    path = tmp_path / "ok.json"
    path.write_text(json.dumps({"name": "x", "a1": [0, 0], "a3": [0], "a6": [0, 0, 1]}))
    assert second_moment(load_family(path), 7) == 84


def test_load_family_unreadable(tmp_path):
    with pytest.raises(FamilyFormatError):
        load_family(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FamilyFormatError):
        load_family(bad)


@pytest.mark.parametrize("cid, rank, tol", [("rank2_t2", 2, 0.35), ("main_theorem", 1, 0.35), ("appendix_a", 0, 0.2)])
def test_nagao_estimates(cid, rank, tol):
    assert abs(nagao_rank_estimate(cid, 10**4) - rank) <= tol


def test_nagao_main_theorem_is_chebyshev_theta():
    # A1 = -p gives (1/X) sum_{2 < p <= X} log p
    X = 10**4
    expected = math.fsum(math.log(p) for p in small_primes(3, X)) / X
    assert nagao_rank_estimate("main_theorem", X) == pytest.approx(expected, rel=1e-12)


def test_nagao_brute_matches_catalog():
    plain = FamilySpec("plain", *(getattr(CATALOG["rank2_t2"].family, k) for k in ("a2_poly", "a4_poly", "a6_poly")))
    assert plain.catalog_id is None
    assert nagao_rank_estimate(plain, 300) == pytest.approx(nagao_rank_estimate("rank2_t2", 300), rel=1e-12)
    assert nagao_rank_estimate(plain, 300, workers=3) == nagao_rank_estimate(plain, 300)


def test_nagao_rejects_small_x():
    with pytest.raises(ValueError):
        nagao_rank_estimate("main_theorem", 50)
