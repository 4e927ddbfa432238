import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from models.errors import BadParameter, EqualPoints, OrderingViolated
from models.records import NumericMode, Verdict
from models.records import REAL_LINE
from services.exprparse import parse, to_fn
from services.realfn import catalog_lookup
from services.slope import (
    barycentric_residual, counterexample_slopes, counterexample_table, slope, strict_deriv_probe,
    two_sided_slope_limit,
)

EXACT = NumericMode.EXACT_RATIONAL


def test_chord_slope():
    f = catalog_lookup("identity")
    assert slope(f, 1.0, 3.0) == 1.0
    with pytest.raises(EqualPoints):
        slope(f, 2.0, 2.0)


def test_slope_is_symmetric(square):
    assert slope(square, 1.0, 2.0) == slope(square, 2.0, 1.0) == 3.0


def test_barycentric_residual_orders_points(square):
    with pytest.raises(OrderingViolated):
        barycentric_residual(square, 0.0, 2.0, 1.0)


@settings(max_examples=60, deadline=None)
@given(
    coeffs=st.lists(st.integers(-6, 6), min_size=1, max_size=5),
    x=st.fractions(min_value=-3, max_value=0, max_denominator=30),
    gaps=st.tuples(
        st.fractions(min_value=Fraction(1, 30), max_value=2, max_denominator=30),
        st.fractions(min_value=Fraction(1, 30), max_value=2, max_denominator=30),
    ),
)
def test_barycentric_decomposition_is_exact(coeffs, x, gaps):
    f = catalog_lookup("poly", coeffs, EXACT)
    a = x + gaps[0]
    y = a + gaps[1]
    assert barycentric_residual(f, x, a, y) == 0


def test_two_sided_limit_of_the_counterexample(wiggle):
    report = two_sided_slope_limit(wiggle, 0.0, 0.5, 10)
    # straddling slopes of x^2 sin(1/x) are bounded by the larger offset
    assert abs(report.estimate) <= 1e-3
    assert report.dispersion <= 2e-3
    assert report.verdict is Verdict.INCONCLUSIVE
    assert len(report.level_dispersions) == 11
    assert report.adversarial_pair[0] < 0.0 < report.adversarial_pair[1]


def test_two_sided_limit_needs_two_levels(square):
    with pytest.raises(BadParameter):
        two_sided_slope_limit(square, 0.0, 0.5, 1)


def test_strict_probe_flags_the_counterexample(wiggle):
    report = strict_deriv_probe(wiggle, 0.0, 0.1, 8, 64)
    assert report.verdict is Verdict.NOT_STRICT
    assert abs(report.adversarial_slope) > 1e-2
    x, y = report.adversarial_pair
    assert x < y


def test_strict_probe_accepts_a_smooth_function(square):
    report = strict_deriv_probe(square, 0.3, 0.1, 8, 64)
    assert report.verdict is Verdict.CONSISTENT_WITH_STRICT
    assert report.estimate == pytest.approx(0.6, abs=1e-6)
    assert report.dispersion < 1e-6


def test_strict_probe_is_reproducible(wiggle):
    first = strict_deriv_probe(wiggle, 0.0, 0.1, 3, 16, seed=7)
    second = strict_deriv_probe(wiggle, 0.0, 0.1, 3, 16, seed=7)
    assert first == second


def test_counterexample_slopes_tend_to_two_over_pi():
    x_0, y_0, p_0 = counterexample_slopes(0)
    assert x_0 < y_0
    assert p_0 == pytest.approx(10 / (3 * math.pi))

    _, _, p = counterexample_slopes(200)
    assert abs(p - 2 / math.pi) < 1e-3


def test_counterexample_table_decreases():
    rows = counterexample_table(20)
    assert [r[0] for r in rows] == list(range(21))
    slopes = [r[3] for r in rows]
    assert all(later < earlier for earlier, later in zip(slopes, slopes[1:]))
    assert all(s > 2 / math.pi for s in slopes)


def test_counterexample_rejects_negative_index():
    with pytest.raises(BadParameter):
        counterexample_slopes(-1)


@settings(max_examples=80, deadline=None)
@given(
    coeffs=st.lists(st.integers(-6, 6), min_size=2, max_size=5),
    x=st.fractions(min_value=-2, max_value=2, max_denominator=30),
    gaps=st.tuples(
        st.fractions(min_value=Fraction(1, 30), max_value=2, max_denominator=30),
        st.fractions(min_value=Fraction(1, 30), max_value=2, max_denominator=30),
    ),
)
def test_chord_slope_lies_between_the_partial_slopes(coeffs, x, gaps):
    f = catalog_lookup("poly", coeffs, EXACT)
    a = x + gaps[0]
    y = a + gaps[1]
    left, right = slope(f, x, a), slope(f, a, y)
    assert min(left, right) <= slope(f, x, y) <= max(left, right)


def test_two_sided_limit_of_abs_has_no_limit():
    f = to_fn(parse("abs(x)"), REAL_LINE)
    report = two_sided_slope_limit(f, 0.0, 0.5, 10)
    assert report.dispersion >= 1.0
    assert all(d >= 1.0 for d in report.level_dispersions)
    assert report.verdict is not Verdict.CONSISTENT_WITH_STRICT


def test_identity_is_strictly_differentiable_everywhere():
    report = strict_deriv_probe(catalog_lookup("identity"), 0.0, 0.1, 8, 64)
    assert report.estimate == 1.0
    assert report.dispersion == 0.0
    assert report.verdict is Verdict.CONSISTENT_WITH_STRICT
