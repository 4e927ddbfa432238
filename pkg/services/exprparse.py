"""
Formula parser, evaluator and symbolic differentiator.

Grammar (whitespace-insensitive):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)?
    exponent:= INT ('^' exponent)? | '-' INT | '(' ['-'] INT ')'
    atom    := NUMBER | 'x' | 'pi' | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := 'sin' | 'cos' | 'abs'

Exponents are integer literals; a chain x^2^3 is folded right to left into
the single literal 8. Exponents are limited to MAX_EXPONENT in magnitude.
"""
import math
import re
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch

from models.errors import (
    DifferentiateAbs, ExactModeUnsupported, ExprSyntaxError, UnknownIdentifier,
)
from models.records import Fn1D, Interval, NumericMode

logger = logging.getLogger(__name__)


# --- AST ---

class Expr:
    precedence = 5


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Pi(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr
    precedence = 3


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr
    precedence = 1
    symbol = "+"


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr
    precedence = 1
    symbol = "-"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr
    precedence = 2
    symbol = "*"


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr
    precedence = 2
    symbol = "/"


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int
    precedence = 4


@dataclass(frozen=True)
class Func(Expr):
    name: str
    arg: Expr


FUNCTIONS = ("sin", "cos", "abs")
BINARY = (Add, Sub, Mul, Div)


# --- Tokenizer ---

SPACE = " \t\r\n"
TOKEN_RE = re.compile(r"[ \t\r\n]*(?:(?P<num>[0-9]+(?:\.[0-9]*)?|\.[0-9]+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")
MAX_EXPONENT = 10 ** 6


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip(SPACE) == "":
            break
        m = TOKEN_RE.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip(SPACE))
            raise ExprSyntaxError(f"Unexpected character {text[offset]!r}", offset)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, offset = self.take()
        if val != value or kind == "end":
            found = "end of input" if kind == "end" else repr(val)
            raise ExprSyntaxError(f"Expected {value!r}, found {found}", offset)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, offset = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"Unexpected {val!r}", offset)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.unary()
            left = Mul(left, right) if op == "*" else Div(left, right)
        return left

    def unary(self) -> Expr:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            offset = self.peek()[2]
            k = self.exponent()
            if abs(k) > MAX_EXPONENT:
                raise ExprSyntaxError(f"Exponent exceeds {MAX_EXPONENT} in magnitude", offset)
            return Pow(base, k)
        return base

    def _int_literal(self) -> int:
        kind, val, offset = self.take()
        if kind != "num":
            found = "end of input" if kind == "end" else repr(val)
            raise ExprSyntaxError(f"Exponent must be an integer literal, found {found}", offset)
        if "." in val:
            raise ExprSyntaxError(f"Non-integer exponent {val!r}", offset)
        if len(val.lstrip("0")) > len(str(MAX_EXPONENT)):
            raise ExprSyntaxError(f"Exponent exceeds {MAX_EXPONENT} in magnitude", offset)
        return int(val)

    def exponent(self) -> int:
        kind, val, offset = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self._int_literal()
        if kind == "op" and val == "(":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            n = sign * self._int_literal()
            kind, val, offset = self.peek()
            if not (kind == "op" and val == ")"):
                raise ExprSyntaxError("Non-integer exponent: only an integer literal may follow '^('", offset)
            self.take()
            return n
        n = self._int_literal()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            k = self.exponent()
            if k < 0:
                raise ExprSyntaxError("Non-integer exponent from negative power of an integer", offset)
            if abs(n) > 1 and k * math.log10(abs(n)) > math.log10(MAX_EXPONENT):
                raise ExprSyntaxError(f"Exponent exceeds {MAX_EXPONENT} in magnitude", offset)
            return n ** k
        return n

    def atom(self) -> Expr:
        kind, val, offset = self.take()
        if kind == "num":
            return Const(Fraction(val))
        if kind == "name":
            if val == "x":
                return Var()
            if val == "pi":
                return Pi()
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(val, arg)
            raise UnknownIdentifier(val, offset)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        found = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"Unexpected {found}", offset)


def parse(text: str) -> Expr:
    if not text or not text.strip():
        raise ExprSyntaxError("Empty expression", 0)
    return _Parser(text).parse()


# --- Printing ---

def _format_const(value: Fraction) -> str:
    if value < 0:
        return f"(-{_format_const(-value)})"
    if value.denominator == 1:
        return str(value.numerator)
    d = value.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"({value.numerator}/{value.denominator})"
    places = max(twos, fives)
    scaled = value.numerator * 10 ** places // value.denominator
    whole, frac = divmod(scaled, 10 ** places)
    return f"{whole}.{str(frac).zfill(places)}"


def to_text(e: Expr) -> str:
    """Render e so that parse(to_text(e)) == e for every parsed expression."""
    if isinstance(e, Const):
        return _format_const(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Func):
        return f"{e.name}({to_text(e.arg)})"
    if isinstance(e, Neg):
        inner = to_text(e.arg)
        return f"-{inner}" if e.arg.precedence >= Neg.precedence else f"-({inner})"
    if isinstance(e, Pow):
        base = to_text(e.base)
        if e.base.precedence <= Pow.precedence:
            base = f"({base})"
        exp = str(e.exponent) if e.exponent >= 0 else f"(-{-e.exponent})"
        return f"{base}^{exp}"
    left = to_text(e.left)
    right = to_text(e.right)
    if e.left.precedence < e.precedence:
        left = f"({left})"
    if e.right.precedence <= e.precedence:
        right = f"({right})"
    return f"{left}{e.symbol}{right}"


# --- Evaluation ---

def uses_transcendentals(e: Expr) -> bool:
    if isinstance(e, Pi):
        return True
    if isinstance(e, Func):
        return e.name in ("sin", "cos") or uses_transcendentals(e.arg)
    if isinstance(e, (Neg,)):
        return uses_transcendentals(e.arg)
    if isinstance(e, Pow):
        return uses_transcendentals(e.base)
    if isinstance(e, BINARY):
        return uses_transcendentals(e.left) or uses_transcendentals(e.right)
    return False


def contains_abs(e: Expr) -> bool:
    if isinstance(e, Func):
        return e.name == "abs" or contains_abs(e.arg)
    if isinstance(e, Neg):
        return contains_abs(e.arg)
    if isinstance(e, Pow):
        return contains_abs(e.base)
    if isinstance(e, BINARY):
        return contains_abs(e.left) or contains_abs(e.right)
    return False


def evaluate(e: Expr, x, exact: bool = False):
    """
    Interpret e at x. With exact=True constants stay Fractions; pi, sin and
    cos are refused. Division by zero propagates as ZeroDivisionError.
    """
    if isinstance(e, Const):
        return e.value if exact else float(e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, Pi):
        if exact:
            raise ExactModeUnsupported("pi is not rational")
        return math.pi
    if isinstance(e, Neg):
        return -evaluate(e.arg, x, exact)
    if isinstance(e, Add):
        return evaluate(e.left, x, exact) + evaluate(e.right, x, exact)
    if isinstance(e, Sub):
        return evaluate(e.left, x, exact) - evaluate(e.right, x, exact)
    if isinstance(e, Mul):
        return evaluate(e.left, x, exact) * evaluate(e.right, x, exact)
    if isinstance(e, Div):
        return evaluate(e.left, x, exact) / evaluate(e.right, x, exact)
    if isinstance(e, Pow):
        base = evaluate(e.base, x, exact)
        if e.exponent < 0 and base == 0:
            raise ZeroDivisionError("zero to a negative power")
        return base ** e.exponent
    if isinstance(e, Func):
        arg = evaluate(e.arg, x, exact)
        if e.name == "abs":
            return abs(arg)
        if exact:
            raise ExactModeUnsupported(f"{e.name} is not rational")
        return math.sin(arg) if e.name == "sin" else math.cos(arg)
    raise TypeError(f"Not an expression node: {e!r}")


# --- Differentiation (literal constant folding only) ---

ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def _add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if a == ZERO:
        return b
    if b == ZERO:
        return a
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if b == ZERO:
        return a
    if a == ZERO:
        return _neg(b)
    return Sub(a, b)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    return Neg(a)


def _mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if a == ZERO or b == ZERO:
        return ZERO
    if a == ONE:
        return b
    if b == ONE:
        return a
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    if b == ONE:
        return a
    return Div(a, b)


def _pow(base: Expr, n: int) -> Expr:
    if n == 1:
        return base
    if n == 0:
        return ONE
    if isinstance(base, Const) and (n > 0 or base.value != 0):
        return Const(base.value ** n)
    return Pow(base, n)


@singledispatch
def differentiate(e: Expr) -> Expr:
    raise TypeError(f"Cannot differentiate a {type(e).__name__}")


@differentiate.register(Const)
@differentiate.register(Pi)
def _(e):
    return ZERO


@differentiate.register(Var)
def _(e):
    return ONE


@differentiate.register(Neg)
def _(e):
    return _neg(differentiate(e.arg))


@differentiate.register(Add)
def _(e):
    return _add(differentiate(e.left), differentiate(e.right))


@differentiate.register(Sub)
def _(e):
    return _sub(differentiate(e.left), differentiate(e.right))


@differentiate.register(Mul)
def _(e):
    # product rule
    return _add(_mul(differentiate(e.left), e.right), _mul(e.left, differentiate(e.right)))


@differentiate.register(Div)
def _(e):
    # quotient rule
    num = _sub(_mul(differentiate(e.left), e.right), _mul(e.left, differentiate(e.right)))
    return _div(num, _pow(e.right, 2))


@differentiate.register(Pow)
def _(e):
    if e.exponent == 0:
        return ZERO
    outer = _mul(Const(Fraction(e.exponent)), _pow(e.base, e.exponent - 1))
    return _mul(outer, differentiate(e.base))


@differentiate.register(Func)
def _(e):
    if e.name == "abs":
        raise DifferentiateAbs("abs is evaluate-only: its derivative is undefined at 0")
    inner = differentiate(e.arg)
    if e.name == "sin":
        return _mul(Func("cos", e.arg), inner)
    return _mul(_neg(Func("sin", e.arg)), inner)


def to_fn(e: Expr, domain: Interval, mode: NumericMode = NumericMode.FLOAT64) -> Fn1D:
    """
    Wrap e as an Fn1D. The derivative oracle interprets differentiate(e);
    expressions containing abs get no derivative oracle.
    """
    exact = mode is NumericMode.EXACT_RATIONAL
    if exact and uses_transcendentals(e):
        raise ExactModeUnsupported(f"{to_text(e)} uses pi/sin/cos; use float mode")

    if exact:
        # infinite bounds stay floats; finite ones become exact
        lo, hi = (v if math.isinf(v) else Fraction(v) for v in (domain.lo, domain.hi))
        domain = Interval(lo, hi)

    def f(x):
        return evaluate(e, x, exact)

    df = None
    if contains_abs(e):
        logger.info(f"{to_text(e)} contains abs; no derivative oracle attached")
    else:
        de = differentiate(e)

        def df(x):
            return evaluate(de, x, exact)

    return Fn1D(to_text(e), f, domain, df, mode)
