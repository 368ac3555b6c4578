"""Enhanced baseline optimizers over the joint (setting, epoch) domain.

All baselines pick one query pair per iteration from uniform joint
candidates, then collect every epoch observation up to the chosen epoch
into the archive (the trajectory enhancement).  Surrogates train on the
sampled pairs only, as in the vanilla single-point methods.
"""

from __future__ import annotations

import time

import numpy as np
from scipy.special import ndtr

from tmobo.core.archive import ParetoArchive
from tmobo.core.hypervolume import Staircase2D, hvi_set
from tmobo.optimizers.records import OptimizerConfig, RunRecord
from tmobo.optimizers.seeding import substream
from tmobo.optimizers.sobol import sobol_init
from tmobo.problems.problem import Problem, TrainingSession
from tmobo.surrogate.gp import fit_gp


def scalarize_tchebycheff(y, weights, rho: float = 0.05):
    """Augmented Tchebycheff scalarization of normalized objectives."""
    y = np.asarray(y, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0) or not np.isclose(weights.sum(), 1.0):
        raise ValueError("weights must be nonnegative and sum to one")
    w = weights * y
    return np.max(w, axis=-1) + rho * np.sum(w, axis=-1)


def expected_improvement(mean, var, best):
    """Closed-form EI for minimization."""
    mean = np.asarray(mean, dtype=float)
    sd = np.sqrt(np.maximum(np.asarray(var, dtype=float), 0.0))
    imp = best - mean
    out = np.maximum(imp, 0.0)
    pos = sd > 0
    u = imp[pos] / sd[pos]
    out[pos] = imp[pos] * ndtr(u) + sd[pos] * np.exp(-0.5 * u**2) / np.sqrt(2 * np.pi)
    return out


def _pair_from_unit(u: np.ndarray, d: int, t_max: int):
    x = u[..., :d]
    t = 1 + np.minimum((u[..., d] * t_max).astype(int), t_max - 1)
    return x, t


def run_joint_baseline(problem: Problem, config: OptimizerConfig) -> list[RunRecord]:
    spec = problem.spec
    d, k, t_max = spec.d, spec.k, spec.t_max
    n0 = config.n_init if config.n_init is not None else 2 * (d + 1)
    q = config.n_candidates if config.n_candidates is not None else 100 * (d + 1)
    temporal = config.temporal_kernels or ("rbf",) * k
    seed = config.seed
    cost_idx = spec.cost_objective
    algorithm = config.algorithm

    archive = ParetoArchive(k)
    pair_X: list[np.ndarray] = []
    pair_t: list[int] = []
    pair_Y: list[np.ndarray] = []
    counters = {"epochs": 0, "cost": 0.0}
    records: list[RunRecord] = []

    def observe_pair(sid, x, t_target, started, phase, index, diagnostics=None):
        session = TrainingSession(problem, x, substream(seed, "noise", sid, 0))
        obs = []
        y = None
        for t in range(1, t_target + 1):
            y = session.observe_epoch()
            archive.add(sid, t, y)
            counters["epochs"] += 1
            if cost_idx is not None:
                counters["cost"] += float(y[cost_idx])
            obs.append([t, *map(float, y)])
        pair_X.append(np.asarray(x, dtype=float))
        pair_t.append(t_target)
        pair_Y.append(np.asarray(y, dtype=float))
        records.append(
            RunRecord(
                phase=phase,
                index=index,
                setting_id=sid,
                setting=[float(v) for v in x],
                stop_epoch=t_target,
                observations=obs,
                hv=archive.hv(),
                ref_point=[float(v) for v in archive.r],
                cumulative_epochs=counters["epochs"],
                cumulative_cost=counters["cost"],
                wall_time_s=time.perf_counter() - started,
                diagnostics=diagnostics or {},
            )
        )

    S = sobol_init(n0, d + 1, seed=substream(seed, "init"))
    xs, ts = _pair_from_unit(S, d, t_max)
    for j in range(n0):
        observe_pair(j, xs[j], int(ts[j]), time.perf_counter(), "init", j)

    warm = [None] * k
    warm_scalar = None
    for it in range(1, config.iterations + 1):
        if (
            config.epoch_budget is not None
            and counters["epochs"] >= config.epoch_budget
        ):
            break
        started = time.perf_counter()
        sid = n0 + it - 1
        diagnostics: dict = {}
        if algorithm == "random_t":
            u = substream(seed, "cand", it).random(d + 1)
            x_pick, t_pick = _pair_from_unit(u[None, :], d, t_max)
            x_pick, t_pick = x_pick[0], int(t_pick[0])
        else:
            cands = substream(seed, "cand", it).random((q, d + 1))
            xc, tc = _pair_from_unit(cands, d, t_max)
            PX = np.asarray(pair_X)
            Pt = np.asarray(pair_t, dtype=int)
            PY = np.asarray(pair_Y)
            if algorithm == "parego_t":
                lam = substream(seed, "weights", it).dirichlet(np.ones(k))
                vals = archive.values()
                lo = vals.min(axis=0)
                span = vals.max(axis=0) - lo
                span[span <= 0] = 1.0
                targets = scalarize_tchebycheff(
                    (PY - lo) / span, lam, config.tchebycheff_rho
                )
                model = fit_gp(
                    PX,
                    Pt,
                    targets,
                    temporal[0],
                    t_max,
                    rng=substream(seed, "fit", it, 0),
                    warm_start=warm_scalar,
                )
                warm_scalar = model.kernel
                mean, var = model.posterior_diag(xc, tc)
                scores = expected_improvement(mean, var, float(targets.min()))
                diagnostics["weights"] = [float(w) for w in lam]
            else:  # ehvi_t
                models = [
                    fit_gp(
                        PX,
                        Pt,
                        PY[:, i],
                        temporal[i],
                        t_max,
                        rng=substream(seed, "fit", it, i),
                        warm_start=warm[i],
                    )
                    for i in range(k)
                ]
                warm = [m.kernel for m in models]
                base = substream(seed, "acq", it).standard_normal(
                    (config.mc_samples, k)
                )
                pts = np.empty((q, config.mc_samples, k))
                for i, m in enumerate(models):
                    mean, var = m.posterior_diag(xc, tc)
                    pts[:, :, i] = mean[:, None] + np.sqrt(var)[:, None] * base[
                        None, :, i
                    ]
                front = archive.front_values()
                if k == 2:
                    stair = Staircase2D(front, archive.r)
                    hvis = stair.hvi_batch(
                        pts.reshape(q * config.mc_samples, 1, 2)
                    ).reshape(q, config.mc_samples)
                    scores = hvis.mean(axis=1)
                else:
                    scores = np.array(
                        [
                            np.mean(
                                [
                                    hvi_set(pts[c, m : m + 1], front, archive.r)
                                    for m in range(config.mc_samples)
                                ]
                            )
                            for c in range(q)
                        ]
                    )
            pick = int(np.argmax(scores))
            x_pick, t_pick = xc[pick], int(tc[pick])
            diagnostics.update(
                {"best_acquisition": float(scores[pick]), "n_candidates": q}
            )
        observe_pair(sid, x_pick, t_pick, started, "iteration", it, diagnostics)
    return records
