from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import InvalidInterval

Real = Union[float, Fraction]


class NumericMode(Enum):
    FLOAT64 = "float64"
    EXACT_RATIONAL = "exact"


@dataclass(frozen=True)
class Interval:
    lo: Real
    hi: Real

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidInterval(f"Interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Real:
        return self.hi - self.lo

    def contains(self, x: Real) -> bool:
        return self.lo <= x <= self.hi

    def covers(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __repr__(self):
        return f"<Interval [{self.lo}, {self.hi}]>"


REAL_LINE = Interval(float("-inf"), float("inf"))


@dataclass(frozen=True)
class Fn1D:
    """
    An evaluable real function of one variable.
    `eval` and `deriv` are pure; callers go through services.realfn.eval_at /
    deriv_at so domain checks and numeric-mode coercion happen in one place.
    """
    name: str
    eval: Callable[[Real], Real]
    domain: Interval = REAL_LINE
    deriv: Optional[Callable[[Real], Real]] = None
    mode: NumericMode = NumericMode.FLOAT64

    @property
    def exact(self) -> bool:
        return self.mode is NumericMode.EXACT_RATIONAL

    def coerce(self, x) -> Real:
        """Bring a point into this function's arithmetic (Fraction or float)."""
        if self.exact:
            return x if isinstance(x, Fraction) else Fraction(x)
        return float(x)

    def __repr__(self):
        deriv = "with deriv" if self.deriv else "no deriv"
        return f"<Fn1D {self.name} on [{self.domain.lo}, {self.domain.hi}] {self.mode.value}, {deriv}>"


# --- Slope probes ---

class Verdict(Enum):
    CONSISTENT_WITH_STRICT = "ConsistentWithStrict"
    NOT_STRICT = "NotStrict"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SlopeProbeReport:
    # Verdicts are heuristic classifications of finite samples, never proofs.
    estimate: float
    dispersion: float
    verdict: Verdict
    adversarial_pair: Optional[tuple] = None
    adversarial_slope: Optional[float] = None
    level_dispersions: tuple = ()
    samples: int = 0

    def __repr__(self):
        return f"<SlopeProbeReport {self.verdict.value} estimate={self.estimate:.6g} dispersion={self.dispersion:.3g}>"


# --- Witness certificates ---

class Stationarity(Enum):
    LEFT = "LeftStationary"
    RIGHT = "RightStationary"
    NONE = "None"


class HalvingRule(Enum):
    LEFT_FIRST = "left_first"
    MAX_DELTA = "max_delta"


class Orientation(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


@dataclass(frozen=True)
class BisectionTrace:
    a_seq: tuple
    b_seq: tuple
    fa_seq: tuple
    fb_seq: tuple
    slopes: tuple
    d: Real
    c: Real
    levels: int
    stationary: Stationarity
    rule: HalvingRule = HalvingRule.LEFT_FIRST
    signed: bool = False
    deriv_c: Optional[float] = None
    deriv_check: Optional[bool] = None

    @property
    def slope_floor(self) -> Real:
        # d/(b-a): every recorded slope is at least this in magnitude
        return self.d / (self.b_seq[0] - self.a_seq[0])

    def __repr__(self):
        return f"<BisectionTrace levels={self.levels} d={self.d} c={float(self.c):.12g} {self.stationary.value}>"


@dataclass(frozen=True)
class EpsilonChain:
    knots: tuple
    values: tuple
    M: Real
    epsilon: Real
    step_slopes: tuple
    absolute: bool = False

    @property
    def bound(self) -> Real:
        return self.M + self.epsilon

    @property
    def rise(self) -> Real:
        return self.values[-1] - self.values[0]

    @property
    def certified_rhs(self) -> Real:
        return self.bound * (self.knots[-1] - self.knots[0])

    def __repr__(self):
        return f"<EpsilonChain {len(self.knots)} knots, rise {self.rise} <= {self.certified_rhs}>"


# --- Inequality reports ---

@dataclass(frozen=True)
class IneqReport:
    holds: bool
    lhs: Real
    rhs: Real
    margin: Real
    prop: str = ""
    side: Optional[str] = None
    counter_witness: Optional[BisectionTrace] = None
    hypothesis_holds: Optional[bool] = None

    def __repr__(self):
        status = "holds" if self.holds else "fails"
        return f"<IneqReport {self.prop} {status}: {self.lhs} vs {self.rhs}>"


# --- Cantor staircase ---

@dataclass(frozen=True)
class StaircaseLevel:
    n: int
    intervals: tuple
    plateau_values: dict = field(default_factory=dict)

    def __repr__(self):
        return f"<StaircaseLevel n={self.n} intervals={len(self.intervals)}>"


# --- Polynomials ---

@dataclass(frozen=True)
class Poly:
    """Element of R_n[x]; coeffs[i] is the coefficient of x^i, trailing zeros allowed."""
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("Poly needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        """Exact degree; -1 for the zero polynomial."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i] != 0:
                return i
        return -1

    def padded(self, size: int) -> "Poly":
        return Poly(self.coeffs + (Fraction(0),) * (size - len(self.coeffs)))

    def trimmed(self) -> "Poly":
        return Poly(self.coeffs[: max(self.degree + 1, 1)])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.trimmed().coeffs == other.trimmed().coeffs

    def __hash__(self):
        return hash(self.trimmed().coeffs)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"<Poly {self}>"
