"""Metric computation: shared true-front estimation and log HV difference
series on iteration, epoch, or cost grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tmobo.core.archive import ParetoArchive
from tmobo.core.dominance import non_dominated_mask
from tmobo.core.hypervolume import hypervolume
from tmobo.optimizers.records import load_trial

LOG_FLOOR = 1e-12
AXES = ("iter", "epochs", "cost")
CONTINUOUS_GRID_POINTS = 101


@dataclass
class MetricSeries:
    problem: str
    optimizer: str
    axis: str
    grid: np.ndarray
    per_trial: np.ndarray  # (n_trials, len(grid))
    mean: np.ndarray
    sd: np.ndarray
    se: np.ndarray

    @property
    def n_trials(self) -> int:
        return self.per_trial.shape[0]


def observations_of(records: list[dict]) -> np.ndarray:
    rows = []
    for rec in records:
        rows.extend(row[1:] for row in rec["observations"])
    return np.asarray(rows, dtype=float)


def estimate_true_front(paths) -> tuple[np.ndarray, np.ndarray]:
    """Non-dominated union of all observations plus the worst corner."""
    paths = list(paths)
    if not paths:
        raise ValueError("need at least one trial file")
    blocks = []
    k = None
    for path in paths:
        _, records = load_trial(path)
        obs = observations_of(records)
        if k is None:
            k = obs.shape[1]
        elif obs.shape[1] != k:
            raise ValueError(f"{path}: objective count {obs.shape[1]} != {k}")
        blocks.append(obs)
    union = np.vstack(blocks)
    r = union.max(axis=0)
    front = union[non_dominated_mask(union)]
    return front, r


def trial_curve(records: list[dict], hv_star: float, r, axis: str):
    """Per-record (x, log10 HV difference) milestones under a shared r."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    if not records:
        raise ValueError("empty trial")
    arc = ParetoArchive(len(r), ref_point=r)
    xs, vals = [], []
    iter_count = 0
    for rec in records:
        for row in rec["observations"]:
            arc.add(rec["setting_id"], int(row[0]), row[1:])
        if axis == "iter":
            if rec["phase"] == "iteration":
                iter_count += 1
            x = float(iter_count)
        elif axis == "epochs":
            x = float(rec["cumulative_epochs"])
        else:
            x = float(rec["cumulative_cost"])
        diff = max(hv_star - arc.hv(), LOG_FLOOR)
        val = float(np.log10(diff))
        if xs and xs[-1] == x:
            vals[-1] = val  # same milestone: keep the latest state
        else:
            xs.append(x)
            vals.append(val)
    return np.asarray(xs), np.asarray(vals)


def step_interp(grid: np.ndarray, xs: np.ndarray, vals: np.ndarray) -> np.ndarray:
    """Last-observation-carried-forward; the first value backfills earlier."""
    idx = np.searchsorted(xs, grid, side="right") - 1
    idx = np.clip(idx, 0, len(xs) - 1)
    return vals[idx]


def shared_grid(curves: list[tuple[np.ndarray, np.ndarray]], axis: str) -> np.ndarray:
    firsts = [float(xs[0]) for xs, _ in curves]
    lasts = [float(xs[-1]) for xs, _ in curves]
    if axis == "iter":
        return np.arange(0, int(max(lasts)) + 1, dtype=float)
    lo, hi = min(firsts), max(lasts)
    if hi <= lo:
        return np.asarray([lo])
    return np.linspace(lo, hi, CONTINUOUS_GRID_POINTS)


def aggregate(
    problem: str,
    optimizer: str,
    axis: str,
    grid: np.ndarray,
    curves: list[tuple[np.ndarray, np.ndarray]],
) -> MetricSeries:
    per_trial = np.stack([step_interp(grid, xs, vals) for xs, vals in curves])
    mean = per_trial.mean(axis=0)
    sd = per_trial.std(axis=0, ddof=1) if per_trial.shape[0] > 1 else np.zeros_like(mean)
    se = sd / np.sqrt(per_trial.shape[0])
    return MetricSeries(problem, optimizer, axis, grid, per_trial, mean, sd, se)


def metric_series(trial_path, front, r, axis: str):
    """Log HV-difference milestones of one trial file under a shared front."""
    _, records = load_trial(trial_path)
    hv_star = hypervolume(front, r)
    return trial_curve(records, hv_star, r, axis)


def final_log_diff(records: list[dict], hv_star: float, r) -> float:
    obs = observations_of(records)
    front = obs[non_dominated_mask(obs)]
    return float(np.log10(max(hv_star - hypervolume(front, r), LOG_FLOOR)))


def normalize_finals(values: np.ndarray) -> np.ndarray:
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi <= lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)
