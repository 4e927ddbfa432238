"""
Constructive witnesses.

Bisection family: fcd_witness, lagrange_witness and iaf_refute halve [a, b]
while keeping |f(b_n) - f(a_n)| >= d/2^n, so every chord slope P(a_n, b_n)
stays above d/(b-a) and the common limit c of the adjacent sequences has
|f'(c)| >= d/(b-a).

epsilon_chain walks a = t_0 < ... < t_m = b keeping every step slope below
M + epsilon, which telescopes into f(b) - f(a) <= (M + epsilon)(b - a).

rolle_witness, mvt_witness and darboux_witness locate interior points by
dense sampling plus ternary refinement.

Continuity and differentiability of f are the caller's contract; nothing
here can verify them.
"""
import logging

import numpy as np

from models.errors import (
    BadParameter, CertificateViolation, DomainViolation, EndpointsNotEqual,
    EqualEndpointValues, NegativeK, NoInteriorExtremum, StepFloorReached,
    TargetNotBracketed, WrongOrientation,
)
from models.records import (
    BisectionTrace, EpsilonChain, Fn1D, HalvingRule, Interval, Orientation, Stationarity,
)
from services.realfn import affine_transform, deriv_at, eval_at, require_within
from services.settings import get_settings

logger = logging.getLogger(__name__)

STATIONARY_RUN = 8
DERIV_TOL = 1e-6
TARGET_TOL = 1e-9


# --- Bisection family ---

def _stationarity(a_seq, b_seq) -> Stationarity:
    if len(a_seq) < STATIONARY_RUN:
        return Stationarity.NONE
    if len(set(a_seq[-STATIONARY_RUN:])) == 1:
        return Stationarity.LEFT
    if len(set(b_seq[-STATIONARY_RUN:])) == 1:
        return Stationarity.RIGHT
    return Stationarity.NONE


def _bisect(f: Fn1D, iv: Interval, levels: int, rule: HalvingRule, sign: int, signed: bool) -> BisectionTrace:
    """
    Shared dichotomy. `sign` orients the increments: with sign = -1 the
    construction runs on -f. When `signed` is false increments are taken in
    absolute value.
    """
    if levels < 1:
        raise BadParameter(f"levels must be >= 1, got {levels}")
    require_within(f, iv)
    slack = 0 if f.exact else get_settings().float_slack

    def rise(fx, fy):
        delta = sign * (fy - fx)
        return delta if signed else abs(delta)

    a, b = f.coerce(iv.lo), f.coerce(iv.hi)
    fa, fb = eval_at(f, a), eval_at(f, b)
    d = rise(fa, fb)

    a_seq, b_seq, fa_seq, fb_seq = [a], [b], [fa], [fb]
    slopes = [(fb - fa) / (b - a)]

    for n in range(levels):
        c = (a + b) / 2
        fc = eval_at(f, c)
        need = d / 2 ** (n + 1)
        floor = need - abs(need) * slack
        left, right = rise(fa, fc), rise(fc, fb)
        left_ok, right_ok = left >= floor, right >= floor

        # triangle inequality: one half always keeps its share of the rise
        if not (left_ok or right_ok):
            raise CertificateViolation(
                f"Halving failed at level {n}: halves rise {left} and {right}, need {need}"
            )

        if rule is HalvingRule.MAX_DELTA:
            take_left = left >= right
        else:
            take_left = left_ok

        if take_left:
            b, fb = c, fc
        else:
            a, fa = c, fc

        a_seq.append(a)
        b_seq.append(b)
        fa_seq.append(fa)
        fb_seq.append(fb)
        slopes.append((fb - fa) / (b - a))

    c = (a + b) / 2
    stationary = _stationarity(a_seq, b_seq)
    if stationary is not Stationarity.NONE:
        logger.warning(f"{f.name}: bisection on [{iv.lo}, {iv.hi}] is {stationary.value}")

    recorded_d = sign * d if signed else d
    deriv_c = deriv_check = None
    if f.deriv is not None:
        try:
            deriv_c = deriv_at(f, c)
        except DomainViolation as e:
            logger.warning(f"No derivative at the witness point: {e}")
        else:
            slope_floor = d / (b_seq[0] - a_seq[0])
            tol = DERIV_TOL * (1 + slope_floor)
            observed = sign * deriv_c if signed else abs(deriv_c)
            deriv_check = bool(observed >= slope_floor - tol)
            if not deriv_check:
                logger.warning(f"{f.name}: f'(c)={deriv_c} misses the slope floor {slope_floor}")

    logger.info(f"Bisection witness for {f.name}: d={recorded_d}, c={float(c):.12g}, {levels} levels")
    return BisectionTrace(
        a_seq=tuple(a_seq),
        b_seq=tuple(b_seq),
        fa_seq=tuple(fa_seq),
        fb_seq=tuple(fb_seq),
        slopes=tuple(slopes),
        d=recorded_d,
        c=c,
        levels=levels,
        stationary=stationary,
        rule=rule,
        signed=signed,
        deriv_c=deriv_c,
        deriv_check=deriv_check,
    )


def fcd_witness(f: Fn1D, iv: Interval, levels: int, rule: HalvingRule = HalvingRule.LEFT_FIRST) -> BisectionTrace:
    """Dichotomy with d = |f(b) - f(a)|; needs f(a) != f(b)."""
    require_within(f, iv)
    if eval_at(f, iv.lo) == eval_at(f, iv.hi):
        raise EqualEndpointValues(f"{f.name} takes the same value at {iv.lo} and {iv.hi}")
    return _bisect(f, iv, levels, rule, sign=1, signed=False)


def lagrange_witness(f: Fn1D, iv: Interval, want: Orientation, levels: int,
                     rule: HalvingRule = HalvingRule.LEFT_FIRST) -> BisectionTrace:
    """
    Dichotomy with signed d = f(b) - f(a). Positive keeps every slope
    >= d/(b-a) > 0; Negative keeps every slope <= d/(b-a) < 0.
    """
    require_within(f, iv)
    fa, fb = eval_at(f, iv.lo), eval_at(f, iv.hi)
    if want is Orientation.POSITIVE and not fa < fb:
        raise WrongOrientation(f"Positive witness needs f(a) < f(b), got {fa} >= {fb}")
    if want is Orientation.NEGATIVE and not fa > fb:
        raise WrongOrientation(f"Negative witness needs f(a) > f(b), got {fa} <= {fb}")
    sign = 1 if want is Orientation.POSITIVE else -1
    return _bisect(f, iv, levels, rule, sign=sign, signed=True)


def iaf_refute(f: Fn1D, iv: Interval, k, levels: int,
               rule: HalvingRule = HalvingRule.LEFT_FIRST):
    """
    Counter-certificate to sup|f'| <= k: when |f(b) - f(a)| > k(b - a) the
    trace keeps every |slope| >= |f(b) - f(a)|/(b - a) > k. Returns None when
    the endpoints do not refute the claim.
    """
    if k < 0:
        raise NegativeK(f"k must be >= 0, got {k}")
    require_within(f, iv)
    k = f.coerce(k)
    a, b = f.coerce(iv.lo), f.coerce(iv.hi)
    if abs(eval_at(f, b) - eval_at(f, a)) <= k * (b - a):
        logger.info(f"{f.name}: |f(b)-f(a)| <= {k}(b-a), nothing to refute")
        return None
    return _bisect(f, iv, levels, rule, sign=1, signed=False)


# --- Epsilon chains ---

def epsilon_chain(f: Fn1D, iv: Interval, M, epsilon, min_step, absolute: bool = False) -> EpsilonChain:
    """
    Greedy chain with every step slope <= M + epsilon (|slope| when
    `absolute`). Each step starts at (b-a)/8, clipped to what is left, and
    halves until admissible; the last knot is b itself.
    """
    if epsilon <= 0:
        raise BadParameter(f"epsilon must be > 0, got {epsilon}")
    if min_step <= 0:
        raise BadParameter(f"min_step must be > 0, got {min_step}")
    require_within(f, iv)

    a, b = f.coerce(iv.lo), f.coerce(iv.hi)
    M, epsilon, min_step = f.coerce(M), f.coerce(epsilon), f.coerce(min_step)
    bound = M + epsilon
    first_step = (b - a) / 8

    t, ft = a, eval_at(f, a)
    knots, values, step_slopes = [t], [ft], []
    while t < b:
        step = min(first_step, b - t)
        while True:
            y = b if step >= b - t else t + step
            fy = eval_at(f, y)
            s = (fy - ft) / (y - t)
            if (abs(s) if absolute else s) <= bound:
                break
            step = step / 2
            if step < min_step:
                raise StepFloorReached(t, min_step)
        knots.append(y)
        values.append(fy)
        step_slopes.append(s)
        t, ft = y, fy

    chain = EpsilonChain(
        knots=tuple(knots),
        values=tuple(values),
        M=M,
        epsilon=epsilon,
        step_slopes=tuple(step_slopes),
        absolute=absolute,
    )
    _check_telescoping(chain, exact=f.exact)
    logger.info(f"Epsilon chain for {f.name}: {len(knots)} knots, bound {bound}")
    return chain


def _check_telescoping(chain: EpsilonChain, exact: bool):
    rise = chain.rise
    rhs = chain.certified_rhs
    slack = 0 if exact else get_settings().float_slack * (1 + abs(rhs)) * len(chain.knots)
    if (abs(rise) if chain.absolute else rise) > rhs + slack:
        raise CertificateViolation(f"Chain rise {rise} exceeds its certified bound {rhs}")


# --- Rolle / MVT / Darboux ---

def _samples(g: Fn1D, xs) -> np.ndarray:
    return np.array([float(eval_at(g, float(x))) for x in xs])


def _refine(g: Fn1D, lo: float, hi: float, refine_levels: int, maximize: bool) -> float:
    def value(x):
        return float(eval_at(g, x))

    for _ in range(refine_levels):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if (value(m1) < value(m2)) == maximize:
            lo = m1
        else:
            hi = m2
    return (lo + hi) / 2


def _locate_extremum(g: Fn1D, lo: float, hi: float, grid: int, refine_levels: int, kind: str = None) -> float:
    """
    Interior extremum of g by grid sampling then ternary refinement around the
    best grid point. kind is "max", "min" or None (whichever sticks out
    further from the endpoint values). A flat sample returns the midpoint.
    """
    xs = np.linspace(lo, hi, grid)
    ys = _samples(g, xs)
    if ys.max() - ys.min() <= 1e-12 * (1 + np.abs(ys).max()):
        return (lo + hi) / 2

    inner = ys[1:-1]
    i_max, i_min = int(np.argmax(inner)) + 1, int(np.argmin(inner)) + 1
    rise_max = ys[i_max] - max(ys[0], ys[-1])
    drop_min = min(ys[0], ys[-1]) - ys[i_min]

    if kind is None:
        if rise_max <= 0 and drop_min <= 0:
            raise NoInteriorExtremum(f"{g.name}: every sampled extremum sits at an endpoint")
        kind = "max" if rise_max >= drop_min else "min"
    i = i_max if kind == "max" else i_min
    return _refine(g, float(xs[i - 1]), float(xs[i + 1]), refine_levels, maximize=(kind == "max"))


def _sup_abs_deriv(f: Fn1D, lo: float, hi: float, grid: int) -> float:
    sup = 0.0
    for x in np.linspace(lo, hi, grid):
        try:
            sup = max(sup, abs(float(deriv_at(f, float(x)))))
        except DomainViolation:
            continue
    return sup


def _check_grid(grid: int, refine_levels: int):
    if grid < 3:
        raise BadParameter(f"grid must be >= 3, got {grid}")
    if refine_levels < 0:
        raise BadParameter(f"refine_levels must be >= 0, got {refine_levels}")


def rolle_witness(f: Fn1D, iv: Interval, grid: int = 1001, refine_levels: int = 60) -> float:
    """Interior c with f'(c) = 0, given f(a) = f(b)."""
    _check_grid(grid, refine_levels)
    require_within(f, iv)
    lo, hi = float(iv.lo), float(iv.hi)
    f_lo, f_hi = float(eval_at(f, lo)), float(eval_at(f, hi))
    if abs(f_lo - f_hi) > 1e-12 * (1 + abs(f_lo)):
        raise EndpointsNotEqual(f"{f.name}: f({lo})={f_lo} differs from f({hi})={f_hi}")

    c = _locate_extremum(f, lo, hi, grid, refine_levels)
    if f.deriv is not None:
        tol = DERIV_TOL * (1 + _sup_abs_deriv(f, lo, hi, grid))
        residual = abs(float(deriv_at(f, c)))
        if residual > tol:
            raise NoInteriorExtremum(f"{f.name}: |f'({c})| = {residual} exceeds {tol}")
    logger.info(f"Rolle point for {f.name} on [{lo}, {hi}]: {c:.12g}")
    return c


def mvt_witness(f: Fn1D, iv: Interval, grid: int = 1001, refine_levels: int = 60) -> float:
    """
    c with f'(c) = (f(b) - f(a))/(b - a), found as the Rolle point of
    g(x) = f(x) - s (x - a).
    """
    _check_grid(grid, refine_levels)
    require_within(f, iv)
    lo, hi = float(iv.lo), float(iv.hi)
    s = (float(eval_at(f, hi)) - float(eval_at(f, lo))) / (hi - lo)

    # 1. Build the auxiliary with equal endpoint values
    g = affine_transform(f, 1, -s, s * lo, name=f"{f.name} - {s}*(x - {lo})")

    # 2. Its interior extremum is the mean-value point
    c = _locate_extremum(g, lo, hi, grid, refine_levels)

    # 3. Residual check against the mean slope
    if f.deriv is not None:
        scale = 1 + max(abs(s), _sup_abs_deriv(f, lo, hi, grid))
        residual = abs(float(deriv_at(f, c)) - s)
        if residual > DERIV_TOL * scale:
            raise NoInteriorExtremum(f"{f.name}: |f'({c}) - {s}| = {residual} exceeds {DERIV_TOL * scale}")
    logger.info(f"Mean-value point for {f.name} on [{lo}, {hi}]: {c:.12g}")
    return c


def _bracket(phi, xs, v: float, tol: float, skip: float):
    """First grid point where phi hits v, or a grid cell where phi - v changes sign."""
    prev_x, prev_r = None, None
    for x in xs:
        x = float(x)
        r = phi(x) - v
        if abs(r) <= tol and x != skip:
            return x, x
        if prev_r is not None and (prev_r < 0) != (r < 0):
            return prev_x, x
        prev_x, prev_r = x, r
    return None


def _solve(phi, lo: float, hi: float, v: float, tol: float, levels: int) -> float:
    r_lo = phi(lo) - v
    mid = (lo + hi) / 2
    for _ in range(levels):
        mid = (lo + hi) / 2
        r_mid = phi(mid) - v
        if abs(r_mid) <= tol:
            break
        if (r_mid < 0) == (r_lo < 0):
            lo, r_lo = mid, r_mid
        else:
            hi = mid
    return mid


def darboux_witness(f: Fn1D, iv: Interval, v, bisect_levels: int = 200, method: str = "slope",
                    grid: int = 1001, refine_levels: int = 60) -> float:
    """
    c in ]a, b[ with f'(c) = v.

    method="slope": phi(x) = P(a, x) (phi(a) = f'(a)) and psi(x) = P(x, b)
    (psi(b) = f'(b)) are continuous, and together they cover every value
    between f'(a) and f'(b). Bisection finds x with phi(x) = v (or psi),
    then the mean-value point of [a, x] (or [x, b]) is the answer.

    method="extremum": g(x) = f(x) - v x has an interior extremum when v lies
    strictly between the one-sided derivative samples; that extremum is c.
    """
    if method not in ("slope", "extremum"):
        raise BadParameter(f"Unknown Darboux method '{method}'")
    _check_grid(grid, refine_levels)
    require_within(f, iv)
    lo, hi = float(iv.lo), float(iv.hi)
    v = float(v)
    inset = 1e-6 * (hi - lo)
    d_lo, d_hi = float(deriv_at(f, lo + inset)), float(deriv_at(f, hi - inset))
    scale = 1 + max(abs(d_lo), abs(d_hi), abs(v))

    if method == "extremum":
        if not min(d_lo, d_hi) < v < max(d_lo, d_hi):
            raise TargetNotBracketed(f"v={v} is not strictly between f'(a+)={d_lo} and f'(b-)={d_hi}")
        g = affine_transform(f, 1, -v, 0, name=f"{f.name} - {v}*x")
        # g'(a+) < 0 < g'(b-) puts a minimum inside, the reverse a maximum
        c = _locate_extremum(g, lo, hi, grid, refine_levels, kind="min" if d_lo < v else "max")
    else:
        c = _darboux_by_slopes(f, lo, hi, v, scale, bisect_levels, grid, refine_levels)

    residual = abs(float(deriv_at(f, c)) - v)
    if residual > DERIV_TOL * scale:
        raise NoInteriorExtremum(f"{f.name}: |f'({c}) - {v}| = {residual} exceeds {DERIV_TOL * scale}")
    logger.info(f"Darboux point for {f.name}, v={v}: {c:.12g}")
    return c


def _darboux_by_slopes(f: Fn1D, lo: float, hi: float, v: float, scale: float,
                       bisect_levels: int, grid: int, refine_levels: int) -> float:
    f_lo, f_hi = float(eval_at(f, lo)), float(eval_at(f, hi))
    d_a, d_b = float(deriv_at(f, lo)), float(deriv_at(f, hi))

    def phi(x):
        return d_a if x == lo else (float(eval_at(f, x)) - f_lo) / (x - lo)

    def psi(x):
        return d_b if x == hi else (f_hi - float(eval_at(f, x))) / (hi - x)

    xs = np.linspace(lo, hi, grid)
    tol = TARGET_TOL * scale

    # 1. Chords from a
    cell = _bracket(phi, xs, v, tol, skip=lo)
    if cell is not None:
        x = cell[0] if cell[0] == cell[1] else _solve(phi, cell[0], cell[1], v, tol, bisect_levels)
        if x > lo:
            return mvt_witness(f, Interval(lo, x), grid, refine_levels)

    # 2. Chords into b
    cell = _bracket(psi, xs, v, tol, skip=hi)
    if cell is not None:
        x = cell[0] if cell[0] == cell[1] else _solve(psi, cell[0], cell[1], v, tol, bisect_levels)
        if x < hi:
            return mvt_witness(f, Interval(x, hi), grid, refine_levels)

    raise TargetNotBracketed(f"v={v} is outside the sampled chord slopes of {f.name} on [{lo}, {hi}]")
