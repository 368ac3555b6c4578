"""Trajectory-based early stopping and uncertainty-driven data selection.

An epoch is promising while the lower confidence bound of the predicted
performance still dominates some front member; training stops once the
current epoch reaches the last promising one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tmobo.core.hypervolume import hvi_set
from tmobo.surrogate.gp import GPModel


@dataclass
class StoppingConfig:
    beta: float = 2.0
    augment_cap: int = 10
    strict_exceed: bool = False  # stop strictly after t* instead of at it
    hvi_criterion: bool = False  # LCB adds positive HVI instead of dominance

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.augment_cap < 1:
            raise ValueError("augmentation cap must be >= 1")


def lcb_trajectory(
    models: list[GPModel], x: np.ndarray, beta: float
) -> np.ndarray:
    """Mean minus sqrt(beta) standard deviations at every epoch; (T, k)."""
    t_max = models[0].t_max
    ts = np.arange(1, t_max + 1)
    Xq = np.tile(np.asarray(x, dtype=float), (t_max, 1))
    cols = []
    for model in models:
        mean, var = model.posterior_diag(Xq, ts)
        cols.append(mean - np.sqrt(beta) * np.sqrt(var))
    return np.stack(cols, axis=1)


def conservative_stopping_epoch(
    models: list[GPModel],
    x: np.ndarray,
    front: np.ndarray,
    beta: float,
    r: np.ndarray | None = None,
    hvi_criterion: bool = False,
) -> int | None:
    """Last epoch whose LCB still dominates a front member (or None).

    With `hvi_criterion` the promising test is instead a positive HVI of
    the LCB point against the front (requires `r`).
    """
    lcb = lcb_trajectory(models, x, beta)
    front = np.atleast_2d(np.asarray(front, dtype=float))
    if hvi_criterion:
        if r is None:
            raise ValueError("hvi criterion needs a reference point")
        promising = np.array(
            [hvi_set(lcb[t : t + 1], front, r) > 0.0 for t in range(lcb.shape[0])]
        )
    else:
        if front.size == 0:
            return None
        le = np.all(lcb[:, None, :] <= front[None, :, :], axis=2)
        lt = np.any(lcb[:, None, :] < front[None, :, :], axis=2)
        promising = np.any(le & lt, axis=1)
    if not promising.any():
        return None
    return int(np.max(np.flatnonzero(promising))) + 1


def should_stop(t_prime: int, t_star: int | None, strict: bool = False) -> bool:
    """Stop once the current epoch reaches (or strictly passes) t*."""
    if t_star is None:
        return True
    return t_prime > t_star if strict else t_prime >= t_star


def select_augmentation_subset(
    models: list[GPModel],
    X_new: np.ndarray,
    t_new: np.ndarray,
    Y_new: np.ndarray,
    cap: int,
) -> list[int]:
    """Greedy highest-uncertainty subset of this iteration's observations.

    The first and last observed epochs are always kept to anchor the
    temporal kernel; remaining picks maximize the sum over objectives of
    the predictive variance normalized by the largest remaining variance,
    re-conditioning the models (hyperparameters frozen) on each selected
    observation before the next pick.  Returns indices in epoch order.
    """
    X_new = np.atleast_2d(np.asarray(X_new, dtype=float))
    t_new = np.asarray(t_new, dtype=int).reshape(-1)
    Y_new = np.atleast_2d(np.asarray(Y_new, dtype=float))
    n = t_new.shape[0]
    if n == 0:
        raise ValueError("nothing to select from")
    if n <= cap:
        return list(range(n))

    order = np.argsort(t_new, kind="stable")
    selected = [int(order[0])]
    if cap >= 2:
        selected.append(int(order[-1]))
    remaining = [i for i in order.tolist() if i not in selected]

    conditioned = list(models)
    for idx in selected:
        conditioned = [
            m.condition_on(X_new[idx : idx + 1], t_new[idx : idx + 1], Y_new[idx, i : i + 1])
            for i, m in enumerate(conditioned)
        ]

    while len(selected) < cap and remaining:
        rem = np.asarray(remaining, dtype=int)
        score = np.zeros(len(remaining))
        for i, model in enumerate(conditioned):
            _, var = model.posterior_diag(X_new[rem], t_new[rem])
            vmax = var.max()
            if vmax > 0:
                score += var / vmax
        pick = int(rem[int(np.argmax(score))])
        selected.append(pick)
        remaining.remove(pick)
        conditioned = [
            m.condition_on(
                X_new[pick : pick + 1], t_new[pick : pick + 1], Y_new[pick, i : i + 1]
            )
            for i, m in enumerate(conditioned)
        ]
    return sorted(selected, key=lambda i: t_new[i])
