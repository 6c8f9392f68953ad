"""Experiment campaigns: parameter grids, deterministic seed derivation,
optional multi-process execution, CSV emission and stat-labelled summaries.

One *cell* is a full coordinate tuple (kind, n, delta, r, tau, alpha, algo,
bound); each cell is run ``runs`` times. Child seeds are a pure function of
the base seed and the cell coordinates, so output is byte-identical no matter
how many worker processes execute the grid. Runs with the same run index
share a capacity trajectory across algorithms, which pairs the comparisons.
"""

from __future__ import annotations

import csv
import io
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

import numpy as np

from . import dynamics, oracle, solvers, stats
from .chance import BOUND_KINDS, ChanceParams
from .model import generate_instance, normalize_kind
from .solvers import ALGORITHMS

RUNS_CSV_HEADER = ("cell_id,algo,bound,r,tau,delta,alpha,run_seed,"
                   "total_offline_error,feasible_fraction,change_count")
SUMMARY_CSV_HEADER = ("cell_id,algo,bound,r,tau,delta,alpha,runs,"
                      "mean_offline_error,std_offline_error,stat")
TRACE_CSV_HEADER = "iteration,capacity,best_profit,violation_prob,phi"


@dataclass(frozen=True)
class CampaignConfig:
    kind: str = "uncorrelated"
    n: int = 100
    deltas: tuple = (25,)
    c_constant: int = 100
    instance_seed: int = 1
    rs: tuple = (500,)
    taus: tuple = (1000,)
    alphas: tuple = (0.01,)
    algos: tuple = ("ea11", "posdc")
    bounds: tuple = ("chebyshev", "chernoff")
    runs: int = 10
    total_iters: int = 100_000  # post-warmup (measured) iterations
    warmup: int = 1_000
    c0_fraction: float = 0.5
    base_seed: int = 0
    out_dir: str | None = None
    jobs: int = 1
    trace: bool = False
    trace_every: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.total_iters < 1:
            raise ValueError("total_iters must be >= 1")
        if self.warmup < 0:
            raise ValueError("warmup must be >= 0")
        for name in ("deltas", "rs", "taus", "alphas", "algos", "bounds"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be nonempty")
        for a in self.algos:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        for b in self.bounds:
            if b not in BOUND_KINDS:
                raise ValueError(f"unknown bound kind {b!r}")
        for a in self.alphas:
            if not 0.0 < a < 1.0:
                raise ValueError(f"alpha must be in (0, 1), got {a}")


@dataclass(frozen=True)
class Cell:
    kind: str
    n: int
    delta: int
    r: int
    tau: int
    alpha: float
    algo: str
    bound: str

    @property
    def cell_id(self) -> str:
        return (f"{self.kind}-n{self.n}-d{self.delta}-r{self.r}-t{self.tau}"
                f"-a{self.alpha:g}-{self.algo}-{self.bound}")

    @property
    def setting(self) -> tuple:
        """Coordinates shared by the algo/bound variants being compared."""
        return (self.kind, self.n, self.delta, self.r, self.tau, self.alpha)


def enumerate_cells(config: CampaignConfig) -> list[Cell]:
    return [Cell(config.kind, config.n, d, r, t, a, algo, bound)
            for d, r, t, a, algo, bound in product(
                config.deltas, config.rs, config.taus, config.alphas,
                config.algos, config.bounds)]


def _alpha_key(alpha: float) -> int:
    # stable 64-bit encoding of the float for seed derivation
    return struct.unpack("<Q", struct.pack("<d", float(alpha)))[0]


def run_seed_for(config: CampaignConfig, cell: Cell, run_idx: int) -> int:
    """Solver seed: pure function of base seed + full cell coordinates."""
    ss = np.random.SeedSequence((config.base_seed, cell.delta, cell.r, cell.tau,
                                 _alpha_key(cell.alpha),
                                 ALGORITHMS.index(cell.algo),
                                 BOUND_KINDS.index(cell.bound), run_idx))
    return int(ss.generate_state(1, np.uint64)[0])


def schedule_seed_for(config: CampaignConfig, cell: Cell, run_idx: int) -> int:
    """Schedule seed: independent of algo/bound/alpha so every variant at the
    same run index faces the same capacity trajectory."""
    ss = np.random.SeedSequence((config.base_seed, 0xD7, cell.delta, cell.r,
                                 cell.tau, run_idx))
    return int(ss.generate_state(1, np.uint64)[0])


# per-process caches; tasks with the same instance coordinates reuse the work
_INSTANCE_CACHE: dict = {}
_DP_CACHE: dict = {}


def _instance_and_dp(kind, n, delta, c_constant, instance_seed):
    key = (kind, n, delta, c_constant, instance_seed)
    inst = _INSTANCE_CACHE.get(key)
    if inst is None:
        inst = _INSTANCE_CACHE[key] = generate_instance(
            kind, n, delta, c_constant, instance_seed)
    dp = _DP_CACHE.get(key)
    if dp is None:
        dp = _DP_CACHE[key] = oracle.dp_optimal_profits(
            inst, inst.total_expected_weight())
    return inst, dp


def execute_run(config: CampaignConfig, cell: Cell, run_idx: int):
    """Run one grid point; returns (cell, run_idx, RunRecord)."""
    inst, dp = _instance_and_dp(cell.kind, cell.n, cell.delta,
                                config.c_constant, config.instance_seed)
    c_min, c_max = dynamics.default_clamp_bounds(inst)
    c0 = dynamics.default_initial_capacity(inst, config.c0_fraction)
    schedule = dynamics.build_schedule(
        c0, cell.tau, cell.r, config.warmup, config.warmup + config.total_iters,
        c_min, c_max, schedule_seed_for(config, cell, run_idx))
    params = ChanceParams(alpha=cell.alpha, delta=cell.delta, bound_kind=cell.bound)
    rec = solvers.run_algorithm(cell.algo, inst, schedule, params, dp,
                                run_seed_for(config, cell, run_idx),
                                trace=config.trace)
    return cell, run_idx, rec


def _execute_task(args):
    config, cell, run_idx = args
    return execute_run(config, cell, run_idx)


@dataclass
class CampaignResult:
    config: CampaignConfig
    cells: list
    records: dict          # (cell, run_idx) -> RunRecord
    summary_rows: list     # parsed summary rows, one per cell
    runs_csv: str
    summary_csv: str
    out_paths: dict = field(default_factory=dict)


def _format_float(x: float) -> str:
    return repr(float(x))


def _runs_csv(config, cells, records) -> str:
    buf = io.StringIO()
    buf.write(RUNS_CSV_HEADER + "\n")
    for cell in cells:
        for j in range(config.runs):
            rec = records[(cell, j)]
            buf.write(",".join([
                cell.cell_id, cell.algo, cell.bound, str(cell.r), str(cell.tau),
                str(cell.delta), _format_float(cell.alpha), str(rec.run_seed),
                _format_float(rec.total_offline_error),
                _format_float(rec.feasible_fraction), str(rec.change_count),
            ]) + "\n")
    return buf.getvalue()


def _summaries(config, cells, records):
    """Per-cell mean/std of the total offline error plus pairwise stat labels
    against the other algo/bound variants at the same setting."""
    by_setting: dict[tuple, list[Cell]] = {}
    for cell in cells:
        by_setting.setdefault(cell.setting, []).append(cell)

    rows = []
    for cell in cells:
        phis = np.array([records[(cell, j)].total_offline_error
                         for j in range(config.runs)])
        mean = float(phis.mean())
        std = float(phis.std(ddof=1)) if config.runs > 1 else 0.0
        family = by_setting[cell.setting]
        stat = ""
        if len(family) > 1 and config.runs > 1:
            named = {c.cell_id: [records[(c, j)].total_offline_error
                                 for j in range(config.runs)] for c in family}
            labels = stats.pairwise_labels(named)
            names = [c.cell_id for c in family]
            stat = stats.format_stat_column(labels, names, cell.cell_id)
        rows.append({"cell": cell, "runs": config.runs, "mean": mean,
                     "std": std, "stat": stat})
    return rows


def _summary_csv(rows) -> str:
    buf = io.StringIO()
    buf.write(SUMMARY_CSV_HEADER + "\n")
    for row in rows:
        cell = row["cell"]
        buf.write(",".join([
            cell.cell_id, cell.algo, cell.bound, str(cell.r), str(cell.tau),
            str(cell.delta), _format_float(cell.alpha), str(row["runs"]),
            _format_float(row["mean"]), _format_float(row["std"]),
            row["stat"],
        ]) + "\n")
    return buf.getvalue()


def _trace_csv(rec, every: int) -> str:
    buf = io.StringIO()
    buf.write(TRACE_CSV_HEADER + "\n")
    phis = rec.per_iteration_phi
    for j in range(0, len(phis), every):
        buf.write(f"{j},{rec.capacity_trace[j]},{rec.best_profit_trace[j]},"
                  f"{_format_float(rec.violation_trace[j])},"
                  f"{_format_float(phis[j])}\n")
    return buf.getvalue()


def run_campaign(config: CampaignConfig) -> CampaignResult:
    """Execute the full grid and (optionally) write the CSV outputs.

    Output text is independent of ``jobs`` and of task completion order.
    """
    cells = enumerate_cells(config)
    tasks = [(config, cell, j) for cell in cells for j in range(config.runs)]
    records = {}
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for cell, j, rec in pool.map(_execute_task, tasks, chunksize=1):
                records[(cell, j)] = rec
    else:
        for task in tasks:
            cell, j, rec = _execute_task(task)
            records[(cell, j)] = rec

    runs_csv = _runs_csv(config, cells, records)
    summary_rows = _summaries(config, cells, records)
    summary_csv = _summary_csv(summary_rows)

    result = CampaignResult(config=config, cells=cells, records=records,
                            summary_rows=summary_rows, runs_csv=runs_csv,
                            summary_csv=summary_csv)
    if config.out_dir is not None:
        out = Path(config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        runs_path = out / "runs.csv"
        runs_path.write_text(runs_csv)
        summary_path = out / "summary.csv"
        summary_path.write_text(summary_csv)
        result.out_paths = {"runs": runs_path, "summary": summary_path}
        if config.trace:
            for cell in cells:
                for j in range(config.runs):
                    rec = records[(cell, j)]
                    path = out / f"trace-{cell.cell_id}-run{j}.csv"
                    path.write_text(_trace_csv(rec, config.trace_every))
            result.out_paths["trace_dir"] = out
    return result


def setting_of_cell_id(cell_id: str) -> str:
    """Strip the algo/bound suffix: cells sharing the prefix are compared."""
    return cell_id.rsplit("-", 2)[0]


def summarize_runs_csv(text: str):
    """Recompute per-cell mean/std plus stat labels from a runs.csv payload."""
    reader = csv.DictReader(io.StringIO(text))
    groups: dict[str, dict] = {}
    for row in reader:
        g = groups.setdefault(row["cell_id"], {"rows": [], "meta": row})
        g["rows"].append(float(row["total_offline_error"]))
    settings: dict[str, list[str]] = {}
    for cid in groups:
        settings.setdefault(setting_of_cell_id(cid), []).append(cid)
    out_rows = []
    for cid, g in groups.items():
        vals = np.asarray(g["rows"])
        meta = g["meta"]
        family = settings[setting_of_cell_id(cid)]
        stat = ""
        if len(family) > 1 and len(vals) > 1:
            named = {other: groups[other]["rows"] for other in family}
            labels = stats.pairwise_labels(named)
            stat = stats.format_stat_column(labels, family, cid)
        out_rows.append({
            "cell_id": cid, "algo": meta["algo"], "bound": meta["bound"],
            "r": meta["r"], "tau": meta["tau"], "delta": meta["delta"],
            "alpha": meta["alpha"], "runs": len(vals),
            "mean": float(vals.mean()),
            "std": float(vals.std(ddof=1)) if len(vals) > 1 else 0.0,
            "stat": stat,
        })
    return out_rows
