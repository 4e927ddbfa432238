"""
Endpoint validators for the finite-increment inequalities, and the
reductions that carry one into another.

A validator only judges the inequality between f(a) and f(b). Hypotheses on
f' (bounds, sign, vanishing) are estimated by sampling and reported apart,
in `hypothesis_holds`; a finite sample never certifies a supremum.
"""
import logging
from dataclasses import replace

import numpy as np

from models.errors import BadBounds, BadParameter, DomainMismatch, DomainViolation, NegativeK, WrongOrientation
from models.records import Fn1D, IneqReport, Interval, Orientation
from services.realfn import affine_transform, deriv_at, eval_at, require_within
from services.settings import get_settings
from services.witness import iaf_refute, lagrange_witness

logger = logging.getLogger(__name__)

COUNTER_WITNESS_LEVELS = 40


def _holds(margin, rhs, exact: bool) -> bool:
    if exact:
        return margin >= 0
    return bool(margin >= -get_settings().float_slack * (1 + abs(rhs)))


def _endpoints(f: Fn1D, iv: Interval):
    require_within(f, iv)
    a, b = f.coerce(iv.lo), f.coerce(iv.hi)
    return a, b, eval_at(f, a), eval_at(f, b)


def _report(prop, lhs, rhs, exact, **extra) -> IneqReport:
    margin = rhs - lhs
    holds = _holds(margin, rhs, exact)
    logger.info(f"{prop}: {'holds' if holds else 'fails'} ({lhs} vs {rhs})")
    return IneqReport(holds=holds, lhs=lhs, rhs=rhs, margin=margin, prop=prop, **extra)


def check_iaf(f: Fn1D, iv: Interval, k) -> IneqReport:
    """|f(b) - f(a)| <= k (b - a); a violation carries an iaf_refute trace."""
    if k < 0:
        raise NegativeK(f"k must be >= 0, got {k}")
    a, b, fa, fb = _endpoints(f, iv)
    report = _report("IAF", abs(fb - fa), f.coerce(k) * (b - a), f.exact)
    if report.holds:
        return report
    witness = iaf_refute(f, iv, k, COUNTER_WITNESS_LEVELS)
    return replace(report, counter_witness=witness)


def check_iafprime(f: Fn1D, iv: Interval, m, M) -> IneqReport:
    """
    m (b - a) <= f(b) - f(a) <= M (b - a). The report shows the side with the
    smaller margin: for the lower side lhs = m (b - a) and rhs = f(b) - f(a).
    """
    if m > M:
        raise BadBounds(f"Need m <= M, got m={m}, M={M}")
    a, b, fa, fb = _endpoints(f, iv)
    rise, width = fb - fa, b - a
    m, M = f.coerce(m), f.coerce(M)

    lower_ok = _holds(rise - m * width, rise, f.exact)
    upper_ok = _holds(M * width - rise, M * width, f.exact)
    if rise - m * width <= M * width - rise:
        side, lhs, rhs = "lower", m * width, rise
    else:
        side, lhs, rhs = "upper", rise, M * width

    holds = lower_ok and upper_ok
    logger.info(f"IAF': {'holds' if holds else 'fails'} (tighter side {side}: {lhs} vs {rhs})")
    return IneqReport(holds=holds, lhs=lhs, rhs=rhs, margin=rhs - lhs, prop="IAF'", side=side)


def check_iafg(f: Fn1D, g: Fn1D, iv: Interval) -> IneqReport:
    """|f(b) - f(a)| <= g(b) - g(a)."""
    if not (f.domain.covers(iv) and g.domain.covers(iv)):
        raise DomainMismatch(f"[{iv.lo}, {iv.hi}] is not inside the domains of both {f.name} and {g.name}")
    if f.mode is not g.mode:
        raise DomainMismatch(f"{f.name} and {g.name} use different numeric modes")
    _, _, fa, fb = _endpoints(f, iv)
    _, _, ga, gb = _endpoints(g, iv)
    return _report("IAFG", abs(fb - fa), gb - ga, f.exact)


def check_maja(f: Fn1D, iv: Interval, M) -> IneqReport:
    """
    f(b) - f(a) <= M (b - a), one-sided. A violation carries a Positive
    Lagrange trace for f - M x, whose slopes all exceed M.
    """
    a, b, fa, fb = _endpoints(f, iv)
    M = f.coerce(M)
    report = _report("MAJA", fb - fa, M * (b - a), f.exact)
    if report.holds:
        return report
    shifted = affine_transform(f, 1, -M, 0, name=f"{f.name} - {M}*x")
    try:
        witness = lagrange_witness(shifted, iv, Orientation.POSITIVE, COUNTER_WITNESS_LEVELS)
    except WrongOrientation:
        # a violation inside the float slack has no room for a trace
        witness = None
    return replace(report, counter_witness=witness)


def derivative_bound_estimate(f: Fn1D, iv: Interval, grid: int) -> tuple:
    """
    (min, max) of f' over `grid` uniformly spaced interior points. A sample
    estimate, not a proven bound.
    """
    if grid < 2:
        raise BadParameter(f"grid must be >= 2, got {grid}")
    require_within(f, iv)
    lo, hi = float(iv.lo), float(iv.hi)
    xs = np.linspace(lo, hi, grid + 2)[1:-1]
    values = []
    for x in xs:
        try:
            values.append(float(deriv_at(f, float(x))))
        except DomainViolation:
            continue
    if not values:
        raise DomainViolation(f"{f.name}' could not be evaluated at any grid point of [{lo}, {hi}]")
    return min(values), max(values)


def reduce_iaf_to_iafprime(f: Fn1D, m, M) -> tuple:
    """
    f1(x) = f(x) - m x and f2(x) = M x - f(x). If m <= f' <= M then
    0 <= f1' <= M - m and f2' >= 0, which is how the two-sided bound follows
    from the monotone one.
    """
    if m > M:
        raise BadBounds(f"Need m <= M, got m={m}, M={M}")
    f1 = affine_transform(f, 1, -f.coerce(m), 0, name=f"{f.name} - {m}*x")
    f2 = affine_transform(f, -1, f.coerce(M), 0, name=f"{M}*x - {f.name}")
    return f1, f2


def premise_holds(f: Fn1D, iv: Interval, m, M, grid: int = 101) -> bool:
    """Sampled check of the reduction's premise 0 <= f1' <= M - m on iv."""
    f1, _ = reduce_iaf_to_iafprime(f, m, M)
    lo, hi = derivative_bound_estimate(f1, iv, grid)
    tol = get_settings().fine_tol
    ok = lo >= -tol and hi <= float(M) - float(m) + tol
    if not ok:
        logger.warning(f"Sampled f1' range [{lo}, {hi}] leaves [0, {float(M) - float(m)}]")
    return ok


def check_fcd(f: Fn1D, iv: Interval, grid: int = 101) -> IneqReport:
    """
    Constancy from a vanishing derivative: lhs = |f(b) - f(a)|, rhs = 0.
    `hypothesis_holds` says whether every sampled |f'| is below the fine tol.
    """
    lo_d, hi_d = derivative_bound_estimate(f, iv, grid)
    hypothesis = max(abs(lo_d), abs(hi_d)) <= get_settings().fine_tol
    _, _, fa, fb = _endpoints(f, iv)
    return _report("FCD", abs(fb - fa), f.coerce(0), f.exact, hypothesis_holds=hypothesis)


def check_svd(f: Fn1D, iv: Interval, grid: int = 101) -> IneqReport:
    """
    Monotonicity from the derivative sign: lhs = 0, rhs = f(b) - f(a).
    A failure carries a Negative Lagrange trace.
    """
    lo_d, _ = derivative_bound_estimate(f, iv, grid)
    hypothesis = lo_d >= -get_settings().fine_tol
    _, _, fa, fb = _endpoints(f, iv)
    report = _report("SVD", f.coerce(0), fb - fa, f.exact, hypothesis_holds=hypothesis)
    if report.holds:
        return report
    try:
        witness = lagrange_witness(f, iv, Orientation.NEGATIVE, COUNTER_WITNESS_LEVELS)
    except WrongOrientation:
        witness = None
    return replace(report, counter_witness=witness)
