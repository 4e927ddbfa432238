"""
CSV and JSON renderings of certificates and reports.

Cells are strings so that exact Fractions stay exact ("p/q") and floats keep
their shortest round-trip repr; output never depends on the locale.
"""
import json
import logging
from enum import Enum
from fractions import Fraction

import pandas as pd

from models.records import BisectionTrace, EpsilonChain, IneqReport, StaircaseLevel

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["n", "a_n", "b_n", "f_a_n", "f_b_n", "slope"]
CHAIN_COLUMNS = ["i", "t_i", "f_t_i", "slope"]
STAIRCASE_COLUMNS = ["x", "f_x"]
INTERVAL_COLUMNS = ["k", "lo", "hi"]
COUNTEREXAMPLE_COLUMNS = ["n", "x_n", "y_n", "slope"]


def cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else str(value.numerator)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _frame(rows, columns) -> pd.DataFrame:
    return pd.DataFrame([[cell(v) for v in row] for row in rows], columns=columns)


def to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, lineterminator="\n")


def trace_frame(trace: BisectionTrace) -> pd.DataFrame:
    rows = zip(range(len(trace.a_seq)), trace.a_seq, trace.b_seq, trace.fa_seq, trace.fb_seq, trace.slopes)
    return _frame(rows, TRACE_COLUMNS)


def chain_frame(chain: EpsilonChain) -> pd.DataFrame:
    slopes = list(chain.step_slopes) + [None]
    rows = zip(range(len(chain.knots)), chain.knots, chain.values, slopes)
    return _frame(rows, CHAIN_COLUMNS)


def staircase_frame(rows) -> pd.DataFrame:
    return _frame(rows, STAIRCASE_COLUMNS)


def intervals_frame(level: StaircaseLevel) -> pd.DataFrame:
    rows = ((k, lo, hi) for k, (lo, hi) in enumerate(level.intervals))
    return _frame(rows, INTERVAL_COLUMNS)


def counterexample_frame(rows) -> pd.DataFrame:
    return _frame(rows, COUNTEREXAMPLE_COLUMNS)


def jsonable(value):
    """Recursively turn records into JSON-ready values (Fractions as "p/q")."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return cell(value)
    if isinstance(value, float):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {_key(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return {name: jsonable(getattr(value, name)) for name in value.__dataclass_fields__}
    return cell(value)


def _key(key) -> str:
    if isinstance(key, tuple):
        # interval keys, e.g. staircase gaps
        return "[" + ", ".join(cell(v) for v in key) + "]"
    return key if isinstance(key, str) else cell(key)


def trace_dict(trace: BisectionTrace) -> dict:
    data = jsonable(trace)
    data["slope_floor"] = jsonable(trace.slope_floor)
    return data


def chain_dict(chain: EpsilonChain) -> dict:
    data = jsonable(chain)
    data.update(bound=jsonable(chain.bound), rise=jsonable(chain.rise), certified_rhs=jsonable(chain.certified_rhs))
    return data


def report_dict(report) -> dict:
    data = jsonable(report)
    if isinstance(report, IneqReport) and report.counter_witness is not None:
        data["counter_witness"] = trace_dict(report.counter_witness)
    return data


def to_json(data) -> str:
    return json.dumps(jsonable(data), sort_keys=True, indent=2) + "\n"


def write_artifact(text: str, path: str) -> str:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    logger.info(f"Wrote {len(text)} bytes to {path}")
    return path
