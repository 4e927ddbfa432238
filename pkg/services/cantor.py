"""
The devil's staircase.

Level n keeps the 2^n closed intervals [a/3^n, (a+1)/3^n] whose left
endpoints have ternary digits in {0, 2} only. The level-n approximant f_n is
affine with slope (3/2)^n on each of them, constant on the gaps, f_n(0) = 0
and f_n(1) = 1; f_0 is the identity. The f_n converge uniformly, with
|f_{n+1} - f_n| <= 2^-n.

Some texts count "2n" closed intervals at level n; the rise accounting
(2^n pieces each rising 2^-n) forces 2^n, which is what is built here.
"""
import logging
from fractions import Fraction
from itertools import product

import numpy as np

from models.errors import BadParameter, DomainViolation, LevelTooDeep, OutOfUnitInterval, TolTooSmall
from models.records import StaircaseLevel

logger = logging.getLogger(__name__)

MAX_LEVEL = 30
# enumerating K_n materializes 2^n intervals and 2^n - 1 gaps
MAX_ENUM_LEVEL = 16


def check_level(n: int):
    if n < 0:
        raise BadParameter(f"Staircase level must be >= 0, got {n}")
    if n > MAX_LEVEL:
        raise LevelTooDeep(f"Level {n} exceeds the cap of {MAX_LEVEL}")


def _check_unit(x):
    if not 0 <= x <= 1:
        raise OutOfUnitInterval(f"x={x} is outside [0, 1]")


def kn_intervals(n: int) -> StaircaseLevel:
    """
    Enumerate K_n by ternary digit strings over {0, 2}; endpoints are exact.
    Levels past MAX_ENUM_LEVEL raise LevelTooDeep; evaluation goes to MAX_LEVEL.
    """
    check_level(n)
    if n > MAX_ENUM_LEVEL:
        raise LevelTooDeep(f"Level {n} has 2^{n} intervals; enumeration stops at level {MAX_ENUM_LEVEL}")
    scale = 3 ** n
    # digit strings come out in lexicographic order, so the lefts are already sorted
    lefts = [
        sum(d * 3 ** (n - 1 - i) for i, d in enumerate(digits))
        for digits in product((0, 2), repeat=n)
    ]
    intervals = tuple((Fraction(a, scale), Fraction(a + 1, scale)) for a in lefts)

    # gap k (1-based, left to right) sits between pieces k-1 and k; f_n = k/2^n there
    plateaus = {}
    for k in range(1, len(intervals)):
        gap = (intervals[k - 1][1], intervals[k][0])
        plateaus[gap] = Fraction(k, 2 ** n)
    return StaircaseLevel(n=n, intervals=intervals, plateau_values=plateaus)


def staircase_eval(n: int, x):
    """
    f_n(x) by descending the ternary digits of x: the left third scales
    f_{n-1} by 1/2, the middle third is the plateau 1/2, the right third is
    1/2 plus half of f_{n-1}. Exact for Fraction input.
    """
    check_level(n)
    _check_unit(x)
    if isinstance(x, float):
        value, weight = 0.0, 1.0
    else:
        x = Fraction(x)
        value, weight = Fraction(0), Fraction(1)
    for _ in range(n):
        x3 = 3 * x
        half = weight / 2
        if x3 <= 1:
            x = x3
        elif x3 < 2:
            return value + half
        else:
            value += half
            x = x3 - 2
        weight = half
    return value + weight * x


def staircase_deriv(n: int, x):
    """(3/2)^n inside a K_n piece, 0 inside a gap; undefined at the corners."""
    check_level(n)
    _check_unit(x)
    exact = not isinstance(x, float)
    slope = Fraction(3, 2) ** n if exact else 1.5 ** n
    for _ in range(n):
        x3 = 3 * x
        if x3 < 1:
            x = x3
        elif x3 == 1 or x3 == 2:
            raise DomainViolation(f"f_{n} has a corner at this point; no derivative")
        elif x3 < 2:
            return 0 * slope
        else:
            x = x3 - 2
    # 0 and 1 are domain endpoints; the one-sided slope is returned there
    return slope


def staircase_limit(x, tol: float):
    """f_n(x) for the smallest n whose tail bound 2^(1-n) is <= tol."""
    if tol <= 0:
        raise BadParameter(f"tol must be > 0, got {tol}")
    _check_unit(x)
    n = 0
    while Fraction(2) ** (1 - n) > Fraction(tol):
        n += 1
        if n > MAX_LEVEL:
            raise TolTooSmall(f"tol={tol} needs more than {MAX_LEVEL} levels")
    return staircase_eval(n, x)


def staircase_grid(tol: float, grid: int) -> list:
    """(x, f(x)) rows on a uniform grid including both endpoints."""
    if grid < 2:
        raise BadParameter(f"grid must be >= 2, got {grid}")
    xs = np.linspace(0.0, 1.0, grid)
    rows = [(float(x), float(staircase_limit(float(x), tol))) for x in xs]
    logger.info(f"Sampled the staircase on {grid} points (tol={tol})")
    return rows


def level_grid(n: int, grid: int) -> list:
    check_level(n)
    if grid < 2:
        raise BadParameter(f"grid must be >= 2, got {grid}")
    return [(float(x), float(staircase_eval(n, float(x)))) for x in np.linspace(0.0, 1.0, grid)]
