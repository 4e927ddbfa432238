"""
The slope function P(x, y) = (f(y) - f(x)) / (y - x) and probes of its limits.

two_sided_slope_limit only looks at straddling pairs x < a < y, which
converge to f'(a) whenever f is differentiable at a. strict_deriv_probe
samples every pair near a, including same-side ones; it can tell a
differentiable function apart from a strictly differentiable one. Verdicts
are heuristic classifications of finite samples, never proofs.
"""
import math
import logging

import numpy as np

from models.errors import BadParameter, EqualPoints, OrderingViolated
from models.records import Fn1D, Interval, SlopeProbeReport, Verdict
from services.realfn import catalog_lookup, deriv_at, eval_at, require_within
from services.settings import get_settings

logger = logging.getLogger(__name__)

# Pairs closer than this many ulps carry no significant digits in P
MIN_PAIR_ULPS = 2 ** 24


def slope(f: Fn1D, x, y):
    x, y = f.coerce(x), f.coerce(y)
    if x == y:
        raise EqualPoints(f"Slope needs two distinct points, got x = y = {x}")
    return (eval_at(f, y) - eval_at(f, x)) / (y - x)


def barycentric_residual(f: Fn1D, x, a, y):
    """
    P(x,y) minus its barycentric decomposition through a:
    ((a-x)/(y-x)) P(a,x) + ((y-a)/(y-x)) P(a,y). Exactly zero in exact mode.
    """
    x, a, y = f.coerce(x), f.coerce(a), f.coerce(y)
    if not x < a < y:
        raise OrderingViolated(f"Need x < a < y, got {x}, {a}, {y}")
    w = y - x
    return slope(f, x, y) - ((a - x) / w * slope(f, a, x) + (y - a) / w * slope(f, a, y))



def _window(f: Fn1D, a, h):
    a, h = f.coerce(a), f.coerce(h)
    require_within(f, Interval(a - h, a + h))


def _straddling_offsets(h):
    steps = [h / 2 ** i for i in range(4)]
    # (h, h^2) and (h^2, h) approach a at very different rates from each side
    return [(s, t) for s in steps for t in steps] + [(h, h * h), (h * h, h)]


def two_sided_slope_limit(f: Fn1D, a, h0, levels: int) -> SlopeProbeReport:
    """
    Sample P(a-h, a+k) at level l with h, k drawn independently from
    {h_l, h_l/2, h_l/4, h_l/8} plus the lopsided pairs (h_l, h_l^2) and
    (h_l^2, h_l), where h_l = h0 / 2^l.
    The estimate is the symmetric value P(a-h_l, a+h_l) at the finest level;
    the dispersion is the spread of that level's samples.
    """
    if levels < 2:
        raise BadParameter(f"levels must be >= 2, got {levels}")
    settings = get_settings()
    _window(f, a, h0)
    a, h0 = f.coerce(a), f.coerce(h0)

    level_dispersions = []
    samples = 0
    for level in range(levels + 1):
        offsets = _straddling_offsets(h0 / 2 ** level)
        values = [float(slope(f, a - h, a + k)) for h, k in offsets]
        samples += len(values)
        level_dispersions.append(max(values) - min(values))

    estimate, dispersion = values[0], level_dispersions[-1]
    verdict = Verdict.NOT_STRICT if dispersion > settings.coarse_tol else Verdict.INCONCLUSIVE

    adversarial_pair = adversarial_slope = None
    if f.deriv is not None:
        target = float(deriv_at(f, a))
        worst = max(range(len(values)), key=lambda i: abs(values[i] - target))
        h, k = offsets[worst]
        adversarial_pair = (float(a - h), float(a + k))
        adversarial_slope = values[worst]

    logger.info(f"Two-sided slope limit of {f.name} at {a}: {estimate:.6g} (dispersion {dispersion:.3g})")
    return SlopeProbeReport(
        estimate=estimate,
        dispersion=dispersion,
        verdict=verdict,
        adversarial_pair=adversarial_pair,
        adversarial_slope=adversarial_slope,
        level_dispersions=tuple(level_dispersions),
        samples=samples,
    )


def _probe_pairs(rng, center: float, w: float, count: int):
    """
    Seeded base points in [center-w, center+w], every pair among them, and
    for each base point u its partners u +- w/2^j for j = 1..60 that stay in
    the window. Pairs closer than MIN_PAIR_ULPS ulps are dropped.
    """
    lo, hi = center - w, center + w
    base = np.unique(rng.uniform(lo, hi, count))
    xs, ys = [], []
    for i, u in enumerate(base):
        for v in base[i + 1:]:
            xs.append(u)
            ys.append(v)
        for j in range(1, 61):
            for p in (u - w / 2 ** j, u + w / 2 ** j):
                if lo <= p <= hi and p != u:
                    xs.append(min(u, p))
                    ys.append(max(u, p))
    xs, ys = np.array(xs), np.array(ys)
    keep = (ys - xs) >= MIN_PAIR_ULPS * np.spacing(np.maximum(np.abs(xs), np.abs(ys)))
    return xs[keep], ys[keep]


def strict_deriv_probe(f: Fn1D, a, h0, levels: int, samples_per_level: int, seed: int = None) -> SlopeProbeReport:
    """
    Probe the unrestricted limit of P(x, y) as (x, y) -> (a, a), x != y.

    Level l looks at the window of half-width h0 / 10^l around a, pairing
    seeded base points with each other and with geometrically close
    partners, so same-side and straddling pairs both occur. Verdict rules:
      NotStrict: finest dispersion > coarse tol and the worst sampled P is
        farther than coarse tol from f'(a);
      ConsistentWithStrict: dispersions never grow and the last one is
        below fine tol;
      Inconclusive otherwise.
    """
    if levels < 1 or samples_per_level < 2:
        raise BadParameter(f"Need levels >= 1 and samples_per_level >= 2, got {levels}, {samples_per_level}")
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    target = float(deriv_at(f, a))
    _window(f, a, h0)

    rng = np.random.default_rng(seed)
    center, h0 = float(a), float(h0)
    level_dispersions = []
    samples = 0
    estimate, worst_pair, worst_slope = target, None, None

    for level in range(levels):
        xs, ys = _probe_pairs(rng, center, h0 / 10 ** level, samples_per_level)
        if len(xs) == 0:
            logger.warning(f"Level {level} of the strict probe kept no pairs; stopping")
            break
        cache = {}
        for p in np.concatenate([xs, ys]):
            if p not in cache:
                cache[p] = float(eval_at(f, float(p)))
        fx = np.array([cache[p] for p in xs])
        fy = np.array([cache[p] for p in ys])
        slopes = (fy - fx) / (ys - xs)

        samples += len(slopes)
        level_dispersions.append(float(slopes.max() - slopes.min()))
        estimate = float(np.median(slopes))
        worst = int(np.argmax(np.abs(slopes - target)))
        worst_pair, worst_slope = (float(xs[worst]), float(ys[worst])), float(slopes[worst])

    dispersion = level_dispersions[-1] if level_dispersions else 0.0
    shrinking = all(later <= earlier for earlier, later in zip(level_dispersions, level_dispersions[1:]))

    if dispersion > settings.coarse_tol and worst_slope is not None and abs(worst_slope - target) > settings.coarse_tol:
        verdict = Verdict.NOT_STRICT
    elif level_dispersions and shrinking and dispersion < settings.fine_tol:
        verdict = Verdict.CONSISTENT_WITH_STRICT
    else:
        verdict = Verdict.INCONCLUSIVE
        logger.warning(f"Strict probe of {f.name} at {a} is inconclusive (dispersion {dispersion:.3g})")

    return SlopeProbeReport(
        estimate=estimate,
        dispersion=dispersion,
        verdict=verdict,
        adversarial_pair=worst_pair,
        adversarial_slope=worst_slope,
        level_dispersions=tuple(level_dispersions),
        samples=samples,
    )


def counterexample_slopes(n: int) -> tuple:
    """
    The sequences x_n = 1/(pi/2 + (2n+1) pi) < y_n = 1/(pi/2 + 2n pi) for
    x^2 sin(1/x), and the chord slope between them, which tends to 2/pi
    while f'(0) = 0.
    """
    if n < 0:
        raise BadParameter(f"n must be >= 0, got {n}")
    f = catalog_lookup("fpq", [2, 1])
    x_n = 1 / (math.pi / 2 + (2 * n + 1) * math.pi)
    y_n = 1 / (math.pi / 2 + 2 * n * math.pi)
    return x_n, y_n, slope(f, x_n, y_n)


def counterexample_table(n_max: int) -> list:
    return [(n, *counterexample_slopes(n)) for n in range(n_max + 1)]
