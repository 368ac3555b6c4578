"""Trajectory-driven optimizer loops (with and without early stopping,
optionally with synchronized replicated training runs)."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from tmobo.acquisition import CenterState, report_outcome, select_next_setting
from tmobo.core.archive import ParetoArchive
from tmobo.core.hypervolume import hvi_set
from tmobo.optimizers.records import OptimizerConfig, RunRecord
from tmobo.optimizers.seeding import substream
from tmobo.optimizers.sobol import sobol_init
from tmobo.problems.problem import Problem, TrainingSession
from tmobo.stopping import conservative_stopping_epoch, should_stop
from tmobo.stopping import select_augmentation_subset
from tmobo.surrogate.gp import fit_gp


@dataclass
class _TrainingSet:
    """GP training data grown by augmentation."""

    X: list = field(default_factory=list)
    t: list = field(default_factory=list)
    Y: list = field(default_factory=list)

    def extend(self, x, epochs, values):
        for e, y in zip(epochs, values):
            self.X.append(np.asarray(x, dtype=float))
            self.t.append(int(e))
            self.Y.append(np.asarray(y, dtype=float))

    def arrays(self):
        return np.asarray(self.X), np.asarray(self.t, dtype=int), np.asarray(self.Y)


def _even_subset(n: int, cap: int) -> np.ndarray:
    """Evenly spaced indices including both endpoints."""
    return np.unique(np.round(np.linspace(0, n - 1, min(cap, n))).astype(int))


def _observe_one_epoch(sessions, archive, sid, t, cost_idx, counters, P):
    ys = np.stack([s.observe_epoch() for s in sessions])
    y = ys.mean(axis=0)
    archive.add(sid, t, y)
    counters["epochs"] += P
    if cost_idx is not None:
        counters["cost"] += float(ys[:, cost_idx].sum())
    return y


def run_trajectory_optimizer(
    problem: Problem, config: OptimizerConfig
) -> list[RunRecord]:
    spec = problem.spec
    d, k, t_max = spec.d, spec.k, spec.t_max
    early_stop = config.algorithm != "tmobo_nes"
    P = config.replications if config.algorithm == "tmobo_p" else 1
    n0 = config.n_init if config.n_init is not None else 2 * (d + 1)
    q = config.n_candidates if config.n_candidates is not None else 100 * d
    temporal = config.temporal_kernels or ("rbf",) * k
    seed = config.seed
    cost_idx = spec.cost_objective

    archive = ParetoArchive(k)
    train = _TrainingSet()
    centers: dict[int, CenterState] = {}
    lookup: dict[int, np.ndarray] = {}
    counters = {"epochs": 0, "cost": 0.0}
    records: list[RunRecord] = []
    visit = 0

    X0 = sobol_init(n0, d, seed=substream(seed, "init"))
    for j in range(n0):
        started = time.perf_counter()
        x = X0[j]
        sessions = [
            TrainingSession(problem, x, substream(seed, "noise", j, p))
            for p in range(P)
        ]
        obs = []
        for t in range(1, t_max + 1):
            y = _observe_one_epoch(sessions, archive, j, t, cost_idx, counters, P)
            obs.append([t, *map(float, y)])
        keep = _even_subset(t_max, config.augment_cap)
        traj = np.asarray([row[1:] for row in obs])
        train.extend(x, keep + 1, traj[keep])
        centers[j] = CenterState(j, radius=config.gamma_max, last_visit=visit)
        lookup[j] = x.copy()
        visit += 1
        records.append(
            RunRecord(
                phase="init",
                index=j,
                setting_id=j,
                setting=[float(v) for v in x],
                stop_epoch=t_max,
                observations=obs,
                hv=archive.hv(),
                ref_point=[float(v) for v in archive.r],
                cumulative_epochs=counters["epochs"],
                cumulative_cost=counters["cost"],
                wall_time_s=time.perf_counter() - started,
            )
        )

    warm = [None] * k
    for it in range(1, config.iterations + 1):
        if (
            config.epoch_budget is not None
            and counters["epochs"] >= config.epoch_budget
        ):
            break
        started = time.perf_counter()
        ZX, Zt, ZY = train.arrays()
        models = [
            fit_gp(
                ZX,
                Zt,
                ZY[:, i],
                temporal[i],
                t_max,
                rng=substream(seed, "fit", it, i),
                warm_start=warm[i],
            )
            for i in range(k)
        ]
        warm = [m.kernel for m in models]
        x_new, diag = select_next_setting(
            models,
            archive,
            centers,
            lookup,
            q=q,
            M=config.mc_samples,
            rng=substream(seed, "acq", it),
            gamma_max=config.gamma_max,
        )
        sid = n0 + it - 1
        front_before = archive.front_values()
        sessions = [
            TrainingSession(problem, x_new, substream(seed, "noise", sid, p))
            for p in range(P)
        ]
        obs = []
        conditioned = models
        stop_reason = "horizon"
        t_star = None
        try:
            for t in range(1, t_max + 1):
                y = _observe_one_epoch(
                    sessions, archive, sid, t, cost_idx, counters, P
                )
                obs.append([t, *map(float, y)])
                if early_stop:
                    # per-epoch update: data conditioning only, fixed kernel
                    conditioned = [
                        m.condition_on(x_new[None, :], [t], [y[i]])
                        for i, m in enumerate(conditioned)
                    ]
                    t_star = conservative_stopping_epoch(
                        conditioned,
                        x_new,
                        archive.front_values(),
                        config.beta,
                        r=archive.r,
                        hvi_criterion=config.stop_hvi_criterion,
                    )
                    if should_stop(t, t_star, strict=config.stop_strict):
                        stop_reason = "early"
                        break
        except Exception as exc:
            raise RuntimeError(f"iteration {it}: trajectory evaluation failed") from exc
        stop_epoch = obs[-1][0]
        traj = np.asarray([row[1:] for row in obs])
        improved = hvi_set(traj, front_before, archive.r) > 0.0
        report_outcome(centers, diag.center_id, improved, config.failure_limit)
        centers[sid] = CenterState(sid, radius=config.gamma_max, last_visit=visit)
        lookup[sid] = x_new.copy()
        visit += 1
        epochs = np.arange(1, stop_epoch + 1)
        keep = select_augmentation_subset(
            models,
            np.tile(x_new, (stop_epoch, 1)),
            epochs,
            traj,
            config.augment_cap,
        )
        train.extend(x_new, epochs[keep], traj[keep])
        records.append(
            RunRecord(
                phase="iteration",
                index=it,
                setting_id=sid,
                setting=[float(v) for v in x_new],
                stop_epoch=int(stop_epoch),
                observations=obs,
                hv=archive.hv(),
                ref_point=[float(v) for v in archive.r],
                cumulative_epochs=counters["epochs"],
                cumulative_cost=counters["cost"],
                wall_time_s=time.perf_counter() - started,
                diagnostics={
                    "center_id": diag.center_id,
                    "best_acquisition": diag.best_value,
                    "n_candidates": diag.n_candidates,
                    "resampled": diag.resampled,
                    "improved": bool(improved),
                    "stop_reason": stop_reason,
                    "t_star": t_star,
                },
            )
        )
    return records
