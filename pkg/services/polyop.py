"""
The derivative operator D on R_n[x] (polynomials of degree <= n) in the
monomial basis 1, x, ..., x^n. Everything is exact: sympy matrices over the
rationals, Fraction coefficients in Poly.
"""
import logging
from fractions import Fraction

from sympy import Matrix, Rational

from models.errors import BadParameter, DegreeExceedsSpace
from models.records import Poly

logger = logging.getLogger(__name__)


def _check_space(n: int):
    if n < 1:
        raise BadParameter(f"R_n[x] needs n >= 1, got {n}")


def d_matrix(n: int) -> Matrix:
    """(n+1) x (n+1) matrix of D; column j sends x^j to j x^(j-1)."""
    _check_space(n)
    return Matrix(n + 1, n + 1, lambda i, j: Rational(j) if i == j - 1 else Rational(0))


def apply_d(p: Poly) -> Poly:
    """D p inside the same space (the top coefficient becomes 0)."""
    coeffs = [i * p.coeffs[i] for i in range(1, len(p.coeffs))] + [Fraction(0)]
    return Poly(coeffs)


def _to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def kernel_basis(n: int) -> list:
    """Basis of ker D, each vector scaled so its first nonzero entry is 1."""
    basis = []
    for vec in d_matrix(n).nullspace():
        pivot = next(v for v in vec if v != 0)
        basis.append(Poly([_to_fraction(v / pivot) for v in vec]))
    return basis


def rank_nullity(n: int) -> tuple:
    """(rank D, dim ker D); they always add up to n + 1."""
    m = d_matrix(n)
    return m.rank(), len(m.nullspace())


def image_misses_top(n: int) -> bool:
    """True when the x^n row of D is zero, i.e. x^n is not in im D."""
    return all(v == 0 for v in d_matrix(n).row(n))


def has_primitive(p: Poly, n: int) -> tuple:
    """
    (True, P) with D P = p and P(0) = 0 when deg p <= n - 1; (False, None)
    when the x^n coefficient of p is nonzero.
    """
    _check_space(n)
    if p.degree > n:
        raise DegreeExceedsSpace(f"deg {p} = {p.degree} exceeds n = {n}")

    coeffs = p.padded(n + 1).coeffs[: n + 1]
    if coeffs[n] != 0:
        logger.info(f"{p} has no primitive in R_{n}[x]")
        return False, None

    primitive = [Fraction(0)] + [coeffs[i] / (i + 1) for i in range(n)]
    return True, Poly(primitive)
