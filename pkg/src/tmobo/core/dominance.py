"""Pareto dominance and non-dominated filtering (minimization)."""

from __future__ import annotations

import numpy as np


def dominates(a, b) -> bool:
    """Strict Pareto dominance: a <= b everywhere and a < b somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def non_dominated_mask(values: np.ndarray) -> np.ndarray:
    """Boolean mask of rows on the Pareto front.

    Dominated rows and repeated copies of a front vector are masked out;
    only the first occurrence of each distinct front vector is kept.
    """
    values = np.atleast_2d(np.asarray(values, dtype=float))
    n, k = values.shape
    if n == 0:
        return np.zeros(0, dtype=bool)
    if k == 2:
        return _mask_2d(values)
    return _mask_generic(values)


def pareto_front(values: np.ndarray) -> np.ndarray:
    """Distinct non-dominated rows of `values`."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    return values[non_dominated_mask(values)]


def _mask_2d(values: np.ndarray) -> np.ndarray:
    # Sort by (f0 asc, f1 asc); a point survives iff its f1 strictly
    # improves on everything seen so far.
    order = np.lexsort((values[:, 1], values[:, 0]))
    f1 = values[order, 1]
    best = np.minimum.accumulate(f1)
    keep_sorted = np.empty(len(f1), dtype=bool)
    keep_sorted[0] = True
    keep_sorted[1:] = f1[1:] < best[:-1]
    mask = np.zeros(len(f1), dtype=bool)
    mask[order] = keep_sorted
    return mask


def _mask_generic(values: np.ndarray, chunk: int = 256) -> np.ndarray:
    n = values.shape[0]
    # Deduplicate first so equal vectors cannot protect each other.
    _, first_idx = np.unique(values, axis=0, return_index=True)
    mask = np.zeros(n, dtype=bool)
    mask[first_idx] = True
    uniq = values[mask]
    uniq_pos = np.flatnonzero(mask)
    for start in range(0, len(uniq), chunk):
        block = uniq[start : start + chunk]  # (c, k)
        le = np.all(uniq[:, None, :] <= block[None, :, :], axis=2)
        lt = np.any(uniq[:, None, :] < block[None, :, :], axis=2)
        dominated = np.any(le & lt, axis=0)
        mask[uniq_pos[start : start + chunk]] = ~dominated
    return mask
