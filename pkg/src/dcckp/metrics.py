"""Offline-error measure: per-iteration distance to the moving optimum,
penalized when the designated solution violates the chance constraint."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def offline_error(p_star: float, p_x: float, violation_prob: float,
                  alpha: float) -> float:
    """Distance to the optimum for one iteration.

    Feasible designated solutions (violation <= alpha) score p_star - p_x;
    infeasible ones score (1 + violation) * p_star, which always dominates any
    feasible score.
    """
    if violation_prob <= alpha:
        return float(p_star - p_x)
    return (1.0 + violation_prob) * p_star


def total_offline_error(phis) -> float:
    """Mean offline error over a run's post-warmup iterations."""
    arr = np.asarray(phis, np.float64)
    if arr.size == 0:
        raise ValueError("offline-error series is empty")
    return float(arr.mean())


@dataclass
class RunRecord:
    """Result of one (algorithm, instance, schedule, seed) run."""

    algo: str
    bound_kind: str
    instance_seed: int
    run_seed: int
    r: int
    tau: int
    delta: int
    alpha: float
    per_iteration_phi: np.ndarray = field(repr=False)
    total_offline_error: float = 0.0
    feasible_fraction: float = 0.0
    change_count: int = 0
    evaluations: int = 0
    # optional per-iteration trace (filled when tracing is requested)
    capacity_trace: np.ndarray | None = field(default=None, repr=False)
    best_profit_trace: np.ndarray | None = field(default=None, repr=False)
    violation_trace: np.ndarray | None = field(default=None, repr=False)
