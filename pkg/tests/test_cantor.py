from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from models.errors import BadParameter, DomainViolation, LevelTooDeep, OutOfUnitInterval, TolTooSmall
from services.cantor import (
    MAX_ENUM_LEVEL, MAX_LEVEL, kn_intervals, level_grid, staircase_deriv, staircase_eval, staircase_grid, staircase_limit,
)

unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=3 ** 7)


def cantor_by_digits(k: int, n: int) -> Fraction:
    """Cantor function at k/3^n read off the ternary digits: 2 -> binary 1, stop at the first 1."""
    digits = []
    for _ in range(n):
        k, d = divmod(k, 3)
        digits.append(d)
    value = Fraction(0)
    for i, d in enumerate(reversed(digits), start=1):
        if d == 1:
            return value + Fraction(1, 2 ** i)
        value += Fraction(d // 2, 2 ** i)
    return value


def test_level_zero_is_the_unit_interval():
    level = kn_intervals(0)
    assert level.intervals == ((Fraction(0), Fraction(1)),)
    assert level.plateau_values == {}


def test_level_two():
    level = kn_intervals(2)
    assert level.intervals == (
        (Fraction(0), Fraction(1, 9)),
        (Fraction(2, 9), Fraction(1, 3)),
        (Fraction(2, 3), Fraction(7, 9)),
        (Fraction(8, 9), Fraction(1)),
    )
    assert level.plateau_values == {
        (Fraction(1, 9), Fraction(2, 9)): Fraction(1, 4),
        (Fraction(1, 3), Fraction(2, 3)): Fraction(1, 2),
        (Fraction(7, 9), Fraction(8, 9)): Fraction(3, 4),
    }


@pytest.mark.parametrize("n", range(0, 8))
def test_intervals_have_ternary_digits_zero_or_two(n):
    level = kn_intervals(n)
    assert len(level.intervals) == 2 ** n
    for lo, hi in level.intervals:
        assert hi - lo == Fraction(1, 3 ** n)
        k = lo * 3 ** n
        assert k.denominator == 1
        k = k.numerator
        while k:
            k, d = divmod(k, 3)
            assert d in (0, 2)


@pytest.mark.parametrize("n", range(1, 5))
def test_plateaus_match_the_evaluator(n):
    for (lo, hi), value in kn_intervals(n).plateau_values.items():
        assert staircase_eval(n, (lo + hi) / 2) == value
        assert staircase_eval(n, lo) == value
        assert staircase_eval(n, hi) == value


@pytest.mark.parametrize("n", range(0, 6))
def test_level_matches_the_digit_map_on_the_ternary_grid(n):
    for k in range(3 ** n):
        assert staircase_eval(n, Fraction(k, 3 ** n)) == cantor_by_digits(k, n)


@pytest.mark.parametrize("n", [0, 1, 5, MAX_LEVEL])
def test_endpoints(n):
    assert staircase_eval(n, Fraction(0)) == 0
    assert staircase_eval(n, Fraction(1)) == 1
    assert staircase_eval(n, 1.0) == 1.0


def test_level_zero_is_the_identity():
    assert staircase_eval(0, Fraction(2, 7)) == Fraction(2, 7)


@settings(max_examples=80, deadline=None)
@given(x=unit_fractions, y=unit_fractions, n=st.integers(0, 12))
def test_monotone(x, y, n):
    x, y = min(x, y), max(x, y)
    assert staircase_eval(n, x) <= staircase_eval(n, y)


@settings(max_examples=80, deadline=None)
@given(x=unit_fractions, n=st.integers(0, 12))
def test_successive_levels_are_uniformly_close(x, n):
    assert abs(staircase_eval(n + 1, x) - staircase_eval(n, x)) <= Fraction(1, 2 ** n)


@settings(max_examples=80, deadline=None)
@given(x=unit_fractions, n=st.integers(0, 12))
def test_self_similarity(x, n):
    assert staircase_eval(n + 1, x / 3) == staircase_eval(n, x) / 2
    assert staircase_eval(n + 1, (x + 2) / 3) == Fraction(1, 2) + staircase_eval(n, x) / 2


def test_derivative():
    assert staircase_deriv(1, Fraction(1, 6)) == Fraction(3, 2)
    assert staircase_deriv(1, Fraction(1, 2)) == 0
    assert staircase_deriv(2, 0.95) == 2.25
    assert staircase_deriv(3, Fraction(0)) == Fraction(27, 8)
    with pytest.raises(DomainViolation):
        staircase_deriv(1, Fraction(1, 3))
    with pytest.raises(DomainViolation):
        staircase_deriv(2, Fraction(2, 9))


def test_limit_at_a_quarter():
    # 1/4 = 0.020202... in base 3, so the limit is 0.010101... = 1/3 in base 2
    assert abs(float(staircase_limit(Fraction(1, 4), 1e-6)) - 1 / 3) <= 1e-6


def test_guards():
    with pytest.raises(LevelTooDeep):
        kn_intervals(MAX_LEVEL + 1)
    with pytest.raises(BadParameter):
        staircase_eval(-1, 0.5)
    with pytest.raises(OutOfUnitInterval):
        staircase_eval(1, Fraction(3, 2))
    with pytest.raises(TolTooSmall):
        staircase_limit(0.5, 1e-12)
    with pytest.raises(BadParameter):
        staircase_limit(0.5, 0)
    with pytest.raises(BadParameter):
        staircase_grid(1e-3, 1)


def test_grid_samples():
    rows = staircase_grid(1e-3, 11)
    assert len(rows) == 11
    assert rows[0] == (0.0, 0.0)
    assert rows[-1] == (1.0, 1.0)
    values = [fx for _, fx in rows]
    assert values == sorted(values)
    assert rows[5][1] == 0.5


def test_level_grid_at_level_zero():
    rows = level_grid(0, 5)
    assert [fx for _, fx in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]


@settings(max_examples=100, deadline=None)
@given(m=st.integers(1, 10), data=st.data())
def test_limit_matches_the_digit_map(m, data):
    k = data.draw(st.integers(0, 3 ** m - 1))
    assert abs(staircase_limit(Fraction(k, 3 ** m), 1e-6) - cantor_by_digits(k, m)) <= Fraction(1, 10 ** 6)


def test_sup_gap_between_levels_on_a_grid():
    xs = [Fraction(i, 997) for i in range(998)]
    for n in range(0, 21):
        gap = max(abs(staircase_eval(n + 1, x) - staircase_eval(n, x)) for x in xs)
        assert gap <= Fraction(1, 2 ** n)


def test_enumeration_stops_before_memory_does():
    level = kn_intervals(MAX_ENUM_LEVEL)
    assert len(level.intervals) == 2 ** MAX_ENUM_LEVEL
    assert len(level.plateau_values) == 2 ** MAX_ENUM_LEVEL - 1
    lefts = [lo for lo, _ in level.intervals]
    assert lefts == sorted(lefts)
    with pytest.raises(LevelTooDeep):
        kn_intervals(MAX_ENUM_LEVEL + 1)
    # evaluation still reaches the deeper levels
    assert staircase_eval(MAX_ENUM_LEVEL + 1, Fraction(1, 4)) < 1
