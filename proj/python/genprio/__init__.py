"""Generator prioritization (GPWD) and unit scheduling (USS) with MILP and MNG baselines."""

import json as _json

from ._genprio import (
    Case,
    ConfigError,
    DataError,
    Schedule,
    SolverError,
    Timeseries,
    build_period_case,
    format_period,
    load_case,
    load_timeseries,
    parse_period,
    period_index,
    rank_units,
    run_milp_uc,
    run_mng,
    run_uss,
)
from ._genprio import run_window as _run_window


def run_window(base, timeseries, methods="uss,milp,mng", first=None, last=None, staged=False):
    """Benchmark report for a window as a dict (rows, warnings, default heat rate)."""
    first = timeseries.first_period if first is None else first
    last = timeseries.last_period if last is None else last
    return _json.loads(_run_window(base, timeseries, methods, first, last, staged))


__all__ = [
    "Case",
    "ConfigError",
    "DataError",
    "Schedule",
    "SolverError",
    "Timeseries",
    "build_period_case",
    "format_period",
    "load_case",
    "load_timeseries",
    "parse_period",
    "period_index",
    "rank_units",
    "run_milp_uc",
    "run_mng",
    "run_uss",
    "run_window",
]
