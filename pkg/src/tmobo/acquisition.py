"""Trajectory-aware acquisition: center search plus sampled-trajectory HVI.

A candidate setting is scored by the average hypervolume improvement of
its sampled predictive trajectories against the current front.  One batch
of standard-normal base samples per iteration is shared across all
candidates (common random numbers), which keeps the argmax stable and the
whole scoring pass deterministic given a seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tmobo.core.archive import ParetoArchive
from tmobo.core.hypervolume import Staircase2D, hvi_set
from tmobo.surrogate.gp import GPModel, factor_covariance

GAMMA_MAX = 0.2
FAILURE_LIMIT = 5


@dataclass
class CenterState:
    """Adaptive search state attached to one visited setting."""

    setting_id: int
    radius: float = GAMMA_MAX
    failures: int = 0
    active: bool = True
    last_visit: int = 0


@dataclass
class AcquisitionDiagnostics:
    center_id: int
    best_value: float
    n_candidates: int
    resampled: bool = False


def select_center(
    archive: ParetoArchive,
    centers: dict[int, CenterState],
    gamma_max: float = GAMMA_MAX,
) -> int:
    """Pick the active setting whose observations contribute the most HV.

    Ties break toward the most recently visited setting.  If every center
    has been excluded, all are reactivated with a reset radius.
    """
    if not centers:
        raise ValueError("no visited settings to choose a center from")
    if not any(c.active for c in centers.values()):
        for c in centers.values():
            c.active = True
            c.radius = gamma_max
            c.failures = 0
    best_id = None
    best_key = None
    for sid, state in centers.items():
        if not state.active:
            continue
        key = (archive.setting_contribution(sid), state.last_visit)
        if best_key is None or key > best_key:
            best_key = key
            best_id = sid
    return best_id


def generate_candidates(
    center_x: np.ndarray, radius: float, q: int, rng: np.random.Generator
) -> np.ndarray:
    """Gaussian perturbations of the center, clipped to the unit cube."""
    if q < 1:
        raise ValueError("need at least one candidate")
    center_x = np.asarray(center_x, dtype=float)
    cands = center_x[None, :] + radius * rng.standard_normal((q, center_x.shape[0]))
    return np.clip(cands, 0.0, 1.0)


def tehvi_batch(
    models: list[GPModel],
    candidates: np.ndarray,
    front: np.ndarray,
    r: np.ndarray,
    base: np.ndarray,
) -> np.ndarray:
    """Mean trajectory HVI over shared MC samples for each candidate.

    `base` holds standard normals of shape (M, k, t_max).  Returns (q,).
    """
    candidates = np.atleast_2d(np.asarray(candidates, dtype=float))
    q = candidates.shape[0]
    k = len(models)
    M, k_b, T = base.shape
    if k_b != k or T != models[0].t_max:
        raise ValueError("base sample shape mismatch")
    r = np.asarray(r, dtype=float)

    samples = np.empty((q, M, T, k))
    for i, model in enumerate(models):
        means, covs = model.posterior_trajectory_batch(candidates)
        for c in range(q):
            L = factor_covariance(covs[c])
            samples[c, :, :, i] = means[c][None, :] + base[:, i, :] @ L.T

    if k == 2:
        stair = Staircase2D(front, r)
        flat = samples.reshape(q * M, T, 2)
        vals = stair.hvi_batch(flat).reshape(q, M)
        return vals.mean(axis=1)
    out = np.empty(q)
    for c in range(q):
        out[c] = float(
            np.mean([hvi_set(samples[c, m], front, r) for m in range(M)])
        )
    return out


def tehvi(
    models: list[GPModel],
    x: np.ndarray,
    front: np.ndarray,
    r: np.ndarray,
    M: int = 128,
    rng: np.random.Generator | None = None,
    base: np.ndarray | None = None,
) -> float:
    """Trajectory expected hypervolume improvement of one setting."""
    if base is None:
        if rng is None:
            raise ValueError("provide rng or base samples")
        base = rng.standard_normal((M, len(models), models[0].t_max))
    return float(tehvi_batch(models, np.atleast_2d(x), front, r, base)[0])


def select_next_setting(
    models: list[GPModel],
    archive: ParetoArchive,
    centers: dict[int, CenterState],
    setting_lookup: dict[int, np.ndarray],
    *,
    q: int,
    M: int,
    rng: np.random.Generator,
    gamma_max: float = GAMMA_MAX,
) -> tuple[np.ndarray, AcquisitionDiagnostics]:
    """Center selection, candidate generation, and batched scoring.

    A winning candidate that exactly matches an already sampled setting
    triggers one candidate resample before being accepted.
    """
    center_id = select_center(archive, centers, gamma_max)
    center_x = setting_lookup[center_id]
    radius = centers[center_id].radius
    front = archive.front_values()
    base = rng.standard_normal((M, len(models), models[0].t_max))
    visited = {arr.tobytes() for arr in setting_lookup.values()}

    cands = generate_candidates(center_x, radius, q, rng)
    values = tehvi_batch(models, cands, front, archive.r, base)
    best = int(np.argmax(values))
    resampled = False
    if cands[best].tobytes() in visited:
        cands = generate_candidates(center_x, radius, q, rng)
        values = tehvi_batch(models, cands, front, archive.r, base)
        best = int(np.argmax(values))
        resampled = True
    diag = AcquisitionDiagnostics(
        center_id=center_id,
        best_value=float(values[best]),
        n_candidates=q,
        resampled=resampled,
    )
    return cands[best].copy(), diag


def report_outcome(
    centers: dict[int, CenterState],
    center_id: int,
    improved: bool,
    failure_limit: int = FAILURE_LIMIT,
) -> None:
    """Radius halving on failure; exclusion after repeated failures."""
    state = centers[center_id]
    if improved:
        state.failures = 0
        return
    state.radius /= 2.0
    state.failures += 1
    if state.failures >= failure_limit:
        state.active = False
