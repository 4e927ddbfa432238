from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from models.errors import (
    AnalysisError, BadArity, BadParameter, ExprSyntaxError, UnknownIdentifier, UnknownName, UsageError,
)
from models.records import Fn1D, Interval, NumericMode, REAL_LINE
from services import exprparse
from services.realfn import catalog_lookup
from services.settings import Settings, get_settings

# check-* commands emit their report as JSON unless told otherwise
DEFAULT_FORMATS = {
    "check-iaf": "json",
    "check-iafp": "json",
    "check-iafg": "json",
    "check-maja": "json",
}

# commands that run on a user-supplied function
NEEDS_FUNCTION = {
    "witness", "lagrange", "refute-iaf", "chain", "rolle", "mvt", "darboux",
    "strict-probe", "check-iaf", "check-iafp", "check-iafg", "check-maja",
}


def _real(text: str, flag: str) -> float:
    """A float flag value; constant expressions such as pi/2 are accepted too."""
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return float(exprparse.evaluate(exprparse.parse(text), 0.0))
    except (AnalysisError, ZeroDivisionError) as e:
        raise UsageError(f"bad number '{text}': {e}", flag=flag)


@dataclass
class RunConfig:
    """Everything one invocation needs; built from parsed flags by from_args."""
    command: str
    fn_text: Optional[str] = None
    catalog: Optional[str] = None
    params: list = field(default_factory=list)
    interval: Optional[tuple] = None
    exact: bool = False
    fmt: str = "text"
    out: Optional[str] = None
    seed: int = 0
    options: dict = field(default_factory=dict)
    settings: Settings = field(default_factory=get_settings)

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        settings = get_settings()
        options = {k: v for k, v in vars(args).items()
                   if k not in ("command", "fn", "catalog", "params", "interval", "exact", "format", "out", "seed")}
        config = cls(
            command=args.command,
            fn_text=getattr(args, "fn", None),
            catalog=getattr(args, "catalog", None),
            params=list(getattr(args, "params", None) or []),
            interval=tuple(args.interval) if getattr(args, "interval", None) else None,
            exact=bool(getattr(args, "exact", False)),
            fmt=getattr(args, "format", None) or DEFAULT_FORMATS.get(args.command, "text"),
            out=getattr(args, "out", None),
            seed=settings.seed if getattr(args, "seed", None) is None else args.seed,
            options=options,
            settings=settings,
        )
        config.validate()
        return config

    def validate(self):
        if self.fn_text and self.catalog:
            raise UsageError("give exactly one of --fn or --catalog", flag="--fn")
        if self.command in NEEDS_FUNCTION and not (self.fn_text or self.catalog):
            raise UsageError("give exactly one of --fn or --catalog", flag="--fn")
        if self.command == "polyop" and self.option("n") < 1:
            raise UsageError(f"R_n[x] needs n >= 1, got {self.option('n')}", flag="--n")
        if self.interval is not None:
            self.get_interval()

    @property
    def mode(self) -> NumericMode:
        return NumericMode.EXACT_RATIONAL if self.exact else NumericMode.FLOAT64

    def get_interval(self) -> Interval:
        if self.interval is None:
            raise UsageError("this command needs --interval LO HI", flag="--interval")
        lo, hi = (self.real(t, "--interval") for t in self.interval)
        try:
            return Interval(lo, hi)
        except AnalysisError as e:
            raise UsageError(str(e), flag="--interval")

    def build_fn(self, fn_text: str = None, catalog: str = None, params: list = None) -> Fn1D:
        """The function named by --fn or --catalog/--params (or the given overrides)."""
        fn_text = fn_text if fn_text is not None else self.fn_text
        catalog = catalog if catalog is not None else self.catalog
        params = params if params is not None else self.params
        if fn_text:
            try:
                expr = exprparse.parse(fn_text)
            except (ExprSyntaxError, UnknownIdentifier) as e:
                raise UsageError(str(e), flag="--fn")
            return exprparse.to_fn(expr, REAL_LINE, self.mode)
        if catalog:
            try:
                return catalog_lookup(catalog, params, self.mode)
            except (UnknownName, BadArity, BadParameter) as e:
                raise UsageError(str(e), flag="--catalog")
        raise UsageError("no function given", flag="--fn")

    def option(self, name: str, default=None):
        value = self.options.get(name)
        return default if value is None else value

    def number(self, name: str, default=None):
        """A numeric option in the run's arithmetic (Fraction when --exact)."""
        value = self.option(name, default)
        if value is None:
            raise UsageError("missing value", flag=f"--{name}")
        return self.real(str(value), f"--{name}")

    def real(self, text: str, flag: str):
        if self.exact:
            try:
                return Fraction(text.strip())
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"'{text}' is not rational", flag=flag)
        return _real(text, flag)
