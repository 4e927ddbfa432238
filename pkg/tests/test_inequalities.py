import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from models.errors import BadBounds, DomainMismatch, NegativeK
from models.records import Interval, NumericMode
from services.inequalities import (
    check_fcd, check_iaf, check_iafg, check_iafprime, check_maja, check_svd, derivative_bound_estimate,
    premise_holds, reduce_iaf_to_iafprime,
)
from services.realfn import catalog_lookup, deriv_at, eval_at

EXACT = NumericMode.EXACT_RATIONAL


def test_iaf_holds_for_sin(sin):
    report = check_iaf(sin, Interval(0.0, 2.0), 1)
    assert report.holds
    assert report.margin > 0
    assert report.counter_witness is None


def test_iaf_failure_carries_a_counter_witness(sin):
    report = check_iaf(sin, Interval(0.0, 2.0), 0.1)
    assert not report.holds
    trace = report.counter_witness
    assert trace is not None
    assert all(abs(s) > 0.1 for s in trace.slopes)


def test_iaf_equality_holds_exactly(exact_unit):
    report = check_iaf(catalog_lookup("identity", mode=EXACT), exact_unit, 1)
    assert report.holds
    assert report.margin == 0


def test_iaf_rejects_negative_k(sin, unit):
    with pytest.raises(NegativeK):
        check_iaf(sin, unit, -0.5)


@settings(max_examples=60, deadline=None)
@given(
    m=st.fractions(min_value=-4, max_value=4, max_denominator=12),
    k=st.fractions(min_value=0, max_value=4, max_denominator=12),
)
def test_iaf_on_affine_maps_is_exactly_the_slope_bound(m, k):
    f = catalog_lookup("affine", [m, 1], EXACT)
    iv = Interval(Fraction(-1), Fraction(2))
    report = check_iaf(f, iv, k)
    assert report.holds == (abs(m) <= k)
    if not report.holds and m != 0:
        assert all(abs(s) == abs(m) for s in report.counter_witness.slopes)


def test_iafprime_reports_the_tighter_side(square, unit):
    report = check_iafprime(square, unit, 0, 2)
    assert report.holds
    assert report.side == "lower"

    report = check_iafprime(square, unit, 1.5, 3)
    assert not report.holds
    assert report.side == "lower"
    assert report.lhs == 1.5 and report.rhs == 1.0

    report = check_iafprime(square, unit, 0, 1.2)
    assert report.holds
    assert report.side == "upper"
    assert report.margin == pytest.approx(0.2)


def test_iafprime_needs_ordered_bounds(square, unit):
    with pytest.raises(BadBounds):
        check_iafprime(square, unit, 2, 1)


def test_iafg(sin):
    g = catalog_lookup("identity")
    assert check_iafg(sin, g, Interval(0.0, 2.0)).holds
    assert not check_iafg(catalog_lookup("affine", [3, 0]), g, Interval(0.0, 2.0)).holds


def test_iafg_domain_and_mode_mismatch(sin):
    with pytest.raises(DomainMismatch):
        check_iafg(sin, catalog_lookup("cantor", [2]), Interval(0.0, 2.0))
    with pytest.raises(DomainMismatch):
        check_iafg(catalog_lookup("identity", mode=EXACT), sin, Interval(Fraction(0), Fraction(1)))


def test_maja_failure_slopes_exceed_the_bound(square, unit):
    report = check_maja(square, unit, 0.5)
    assert not report.holds
    trace = report.counter_witness
    assert trace.slope_floor == pytest.approx(0.5)
    assert all(s >= 0.5 * (1 - 1e-9) for s in trace.slopes)


def test_maja_is_one_sided(unit):
    f = catalog_lookup("affine", [-5, 0])
    assert check_maja(f, unit, 0).holds


def test_reduction_to_monotone_bounds(sin):
    f1, f2 = reduce_iaf_to_iafprime(sin, -1, 1)
    assert eval_at(f1, 1.0) == pytest.approx(math.sin(1.0) + 1.0)
    assert eval_at(f2, 1.0) == pytest.approx(1.0 - math.sin(1.0))
    assert deriv_at(f1, 2.0) == pytest.approx(math.cos(2.0) + 1.0)
    assert deriv_at(f2, 2.0) == pytest.approx(1.0 - math.cos(2.0))
    with pytest.raises(BadBounds):
        reduce_iaf_to_iafprime(sin, 1, -1)


def test_reduction_premise(sin):
    iv = Interval(0.0, 3.0)
    assert premise_holds(sin, iv, -1, 1)
    assert not premise_holds(sin, iv, -0.5, 1)


def test_derivative_bound_estimate(sin):
    lo, hi = derivative_bound_estimate(sin, Interval(0.0, math.pi), 101)
    assert lo < -0.99
    assert hi > 0.99


def test_constancy_check(unit, sin):
    report = check_fcd(catalog_lookup("constant", [3]), unit)
    assert report.holds
    assert report.hypothesis_holds

    report = check_fcd(sin, unit)
    assert not report.holds
    assert not report.hypothesis_holds


def test_monotonicity_check(square, unit):
    report = check_svd(square, unit)
    assert report.holds
    assert report.hypothesis_holds

    report = check_svd(catalog_lookup("affine", [-1, 0]), unit)
    assert not report.holds
    assert not report.hypothesis_holds
    assert report.counter_witness.d == pytest.approx(-1.0)


def exact_intervals(lo=-3, hi=3):
    ends = st.fractions(min_value=lo, max_value=hi, max_denominator=24)
    return st.tuples(ends, ends).filter(lambda p: p[0] != p[1]).map(lambda p: Interval(min(p), max(p)))


@settings(max_examples=80, deadline=None)
@given(
    coeffs=st.lists(st.integers(-5, 5), min_size=1, max_size=4),
    iv=exact_intervals(),
    k=st.fractions(min_value=0, max_value=30, max_denominator=6),
)
def test_iaf_bound_is_the_symmetric_two_sided_bound(coeffs, iv, k):
    f = catalog_lookup("poly", coeffs, EXACT)
    one_sided = check_iaf(f, iv, k)
    two_sided = check_iafprime(f, iv, -k, k)
    assert one_sided.holds == two_sided.holds
    if one_sided.holds:
        assert two_sided.margin >= 0


@settings(max_examples=60, deadline=None)
@given(c=st.fractions(min_value=-10, max_value=10, max_denominator=9), iv=exact_intervals())
def test_constants_meet_the_zero_bound_with_no_margin(c, iv):
    f = catalog_lookup("constant", [c], EXACT)
    iaf = check_iaf(f, iv, 0)
    assert iaf.holds
    assert iaf.margin == 0
    fcd = check_fcd(f, iv)
    assert fcd.holds and fcd.hypothesis_holds
    assert fcd.margin == 0


@settings(max_examples=60, deadline=None)
@given(
    cubic=st.integers(0, 4), linear=st.integers(0, 4), shift=st.integers(-5, 5),
    iv=exact_intervals(),
)
def test_nonnegative_derivative_gives_nondecreasing(cubic, linear, shift, iv):
    f = catalog_lookup("poly", [shift, linear, 0, cubic], EXACT)
    report = check_svd(f, iv)
    assert report.hypothesis_holds
    assert report.holds
    assert report.margin >= 0
    assert report.counter_witness is None
