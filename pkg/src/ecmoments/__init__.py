"""Moments of elliptic-curve point counts over one-parameter families.

Submodules:

* :mod:`~ecmoments.modarith` - Legendre symbols, square and cube roots mod p
* :mod:`~ecmoments.legendre_sums` - closed-form quadratic character sums
* :mod:`~ecmoments.curve_counts` - a_t(p) and point counts for one curve
* :mod:`~ecmoments.family_moments` - first/second moments, catalog of closed forms
* :mod:`~ecmoments.sharpness` - the p^{3/2} term for y^2 = x^3 + T x^2 + 1
* :mod:`~ecmoments.rank_bounds` - test-function pair and average-rank bound
"""

from .curve_counts import CurveModP, point_count, theta_angle, trace_a
from .family_moments import (
    CATALOG,
    FamilySpec,
    closed_form_A2,
    first_moment,
    nagao_rank_estimate,
    second_moment,
    verify_family,
)
from .modarith import OddPrime, legendre_symbol

__version__ = "0.1.0"
