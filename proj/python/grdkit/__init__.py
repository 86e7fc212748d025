"""Groupoid / Fell bundle rapid-decay toolkit (python interface)."""

import json as _json

try:
    from ._grdkit import (  # type: ignore
        BudgetError,
        InputError,
        ball_counts,
        classify_counts,
        kernel_ratio_trend,
        norm_report as _norm_report_json,
        run_cli,
        steinberg_sign,
    )
except ImportError:  # module built out-of-tree (plain CMake build dir)
    from _grdkit import (  # type: ignore
        BudgetError,
        InputError,
        ball_counts,
        classify_counts,
        kernel_ratio_trend,
        norm_report as _norm_report_json,
        run_cli,
        steinberg_sign,
    )

__all__ = [
    "BudgetError",
    "InputError",
    "ball_counts",
    "classify_counts",
    "kernel_ratio_trend",
    "norm_report",
    "run_cli",
    "steinberg_sign",
]


def norm_report(system, n=3, dim=1, seed=0):
    """Norm report of a seeded random section, decoded from JSON."""
    return _json.loads(_norm_report_json(system, n, dim, seed))
