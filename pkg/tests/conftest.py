from fractions import Fraction

import pytest

from models.records import Interval, NumericMode
from services.realfn import catalog_lookup

EXACT = NumericMode.EXACT_RATIONAL


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Tests run against the built-in defaults, whatever the shell exports."""
    for key in ("REALFN_SEED", "REALFN_COARSE_TOL", "REALFN_FINE_TOL", "REALFN_FLOAT_SLACK",
                "REALFN_OUTPUT_DIR", "REALFN_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def unit():
    return Interval(0.0, 1.0)


@pytest.fixture
def exact_unit():
    return Interval(Fraction(0), Fraction(1))


@pytest.fixture
def sin():
    return catalog_lookup("sin")


@pytest.fixture
def square():
    return catalog_lookup("monomial", [2])


@pytest.fixture
def cube():
    return catalog_lookup("monomial", [3])


@pytest.fixture
def wiggle():
    """x^2 sin(1/x): differentiable everywhere, not strictly at 0."""
    return catalog_lookup("fpq", [2, 1])
