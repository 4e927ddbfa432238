import math
import logging
from fractions import Fraction
from typing import Sequence

from models.errors import (
    AnalysisError, BadArity, BadParameter, DomainViolation,
    ExactModeUnsupported, MissingDerivOracle, UnknownName,
)
from models.records import Fn1D, Interval, NumericMode, REAL_LINE
from services import cantor

logger = logging.getLogger(__name__)

UNIT_INTERVAL = Interval(Fraction(0), Fraction(1))

# name -> (arity, None means variadic with at least one parameter)
CATALOG = {
    "identity": 0,
    "constant": 1,
    "affine": 2,
    "monomial": 1,
    "poly": None,
    "sin": 0,
    "fpq": 2,
    "cantor": 1,
}

EXACT_CAPABLE = {"identity", "constant", "affine", "monomial", "poly", "cantor"}


def _rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # "0.1" on the command line means 1/10, not the nearest binary float
        return Fraction(repr(value))
    return Fraction(str(value).strip())


def _integer(value, label: str) -> int:
    q = _rational(value)
    if q.denominator != 1:
        raise BadParameter(f"{label} must be an integer, got {q}")
    return int(q)


def _guard(fn, x):
    try:
        y = fn(x)
    except AnalysisError:
        raise
    except (ZeroDivisionError, OverflowError, ValueError) as e:
        raise DomainViolation(f"Evaluation failed at x={x}: {e}") from e
    if isinstance(y, float) and math.isnan(y):
        raise DomainViolation(f"Evaluation produced NaN at x={x}")
    return y


def eval_at(f: Fn1D, x):
    """Evaluate f at x after coercing x into f's arithmetic."""
    x = f.coerce(x)
    if not f.domain.contains(x):
        raise DomainViolation(f"{f.name}: x={x} outside [{f.domain.lo}, {f.domain.hi}]")
    return _guard(f.eval, x)


def deriv_at(f: Fn1D, x):
    if f.deriv is None:
        raise MissingDerivOracle(f"{f.name} has no derivative oracle")
    x = f.coerce(x)
    if not f.domain.contains(x):
        raise DomainViolation(f"{f.name}': x={x} outside [{f.domain.lo}, {f.domain.hi}]")
    return _guard(f.deriv, x)


def require_within(f: Fn1D, iv: Interval):
    if not f.domain.covers(iv):
        raise DomainViolation(f"{f.name}: [{iv.lo}, {iv.hi}] not inside its domain")


def catalog_lookup(name: str, params: Sequence = (), mode: NumericMode = NumericMode.FLOAT64) -> Fn1D:
    """
    Build a catalog function with its exact symbolic derivative attached.
    Parameters are rationals (Fraction, int, decimal string or "p/q").
    """
    if name not in CATALOG:
        raise UnknownName(f"Unknown catalog function '{name}'. Known: {', '.join(sorted(CATALOG))}")

    arity = CATALOG[name]
    if arity is None and len(params) < 1:
        raise BadArity(f"{name} needs at least one coefficient")
    if arity is not None and len(params) != arity:
        raise BadArity(f"{name} takes {arity} parameter(s), got {len(params)}")

    if mode is NumericMode.EXACT_RATIONAL and name not in EXACT_CAPABLE:
        raise ExactModeUnsupported(f"{name} is not closed under rational arithmetic")

    exact = mode is NumericMode.EXACT_RATIONAL
    num = (lambda q: q) if exact else float
    qs = [_rational(p) for p in params]

    if name == "identity":
        return Fn1D("identity", lambda x: x, REAL_LINE, lambda x: num(1), mode)

    if name == "constant":
        c = num(qs[0])
        return Fn1D(f"constant({qs[0]})", lambda x: c, REAL_LINE, lambda x: num(0), mode)

    if name == "affine":
        m, c = num(qs[0]), num(qs[1])
        return Fn1D(f"affine({qs[0]},{qs[1]})", lambda x: m * x + c, REAL_LINE, lambda x: m, mode)

    if name == "monomial":
        p = _integer(qs[0], "monomial degree")
        if p < 0:
            raise BadParameter(f"monomial degree must be >= 0, got {p}")
        if p == 0:
            return Fn1D("monomial(0)", lambda x: num(1), REAL_LINE, lambda x: num(0), mode)
        return Fn1D(f"monomial({p})", lambda x: x ** p, REAL_LINE, lambda x: p * x ** (p - 1), mode)

    if name == "poly":
        coeffs = [num(q) for q in qs]
        dcoeffs = [i * coeffs[i] for i in range(1, len(coeffs))] or [num(0)]
        label = ",".join(str(q) for q in qs)
        return Fn1D(f"poly({label})", lambda x: _horner(coeffs, x), REAL_LINE,
                    lambda x: _horner(dcoeffs, x), mode)

    if name == "sin":
        return Fn1D("sin", math.sin, REAL_LINE, math.cos, mode)

    if name == "fpq":
        return _fpq(_integer(qs[0], "p"), _integer(qs[1], "q"))

    # cantor level n: piecewise affine, derivative undefined at the corners
    n = _integer(qs[0], "level")
    cantor.check_level(n)
    return Fn1D(
        f"cantor({n})",
        lambda x: cantor.staircase_eval(n, x),
        UNIT_INTERVAL if exact else Interval(0.0, 1.0),
        lambda x: cantor.staircase_deriv(n, x),
        mode,
    )


def _horner(coeffs, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _fpq(p: int, q: int) -> Fn1D:
    """x^p sin(1/x^q), extended by f(0) = 0."""
    if p < 1:
        raise BadParameter(f"fpq needs p >= 1 (derivative at 0 undefined), got p={p}")
    if q < 1:
        raise BadParameter(f"fpq needs q >= 1, got q={q}")

    def f(x):
        if x == 0:
            return 0.0
        envelope = x ** p
        try:
            phase = x ** -q
        except OverflowError:
            phase = None
        # |f(x)| <= |x|^p; past the float range the phase carries no digits
        if envelope == 0 or phase is None:
            return 0.0
        return envelope * math.sin(phase)

    def df(x):
        if x == 0:
            if p >= 2:
                return 0.0
            raise DomainViolation(f"fpq({p},{q}) is not differentiable at 0")
        return p * x ** (p - 1) * math.sin(x ** -q) - q * x ** (p - q - 1) * math.cos(x ** -q)

    return Fn1D(f"fpq({p},{q})", f, REAL_LINE, df, NumericMode.FLOAT64)


def affine_transform(f: Fn1D, scale=1, slope=0, intercept=0, name: str = None) -> Fn1D:
    """
    x -> scale*f(x) + slope*x + intercept, with the composed derivative
    scale*f'(x) + slope when f has one. Covers the reductions f - m x,
    M x - f and the mean-value auxiliary f(x) - s (x - a).
    """
    s, m, c = f.coerce(scale), f.coerce(slope), f.coerce(intercept)

    def g(x):
        return s * eval_at(f, x) + m * x + c

    dg = None
    if f.deriv is not None:
        def dg(x):
            return s * deriv_at(f, x) + m

    label = name or f"{scale}*{f.name} + {slope}*x + {intercept}"
    return Fn1D(label, g, f.domain, dg, f.mode)
