"""Observation archive with incremental Pareto-front maintenance."""

from __future__ import annotations

import numpy as np

from tmobo.core.dominance import non_dominated_mask
from tmobo.core.hypervolume import hypervolume


class ParetoArchive:
    """All observations plus the maintained non-dominated front.

    Every observation is stored with its setting id and epoch for
    provenance.  The front index set holds one entry per distinct
    non-dominated vector (first occurrence wins); duplicates stay in the
    archive but never join the front.

    The reference point tracks the componentwise worst value seen so far
    unless a fixed `ref_point` is supplied.
    """

    def __init__(self, k: int, ref_point=None) -> None:
        if k < 1:
            raise ValueError("need at least one objective")
        self.k = k
        self._values: list[np.ndarray] = []
        self._setting_ids: list[int] = []
        self._epochs: list[int] = []
        self._front: list[int] = []
        self._front_values = np.empty((0, k))
        self._auto_ref = ref_point is None
        self.r = None if ref_point is None else np.asarray(ref_point, dtype=float)

    def __len__(self) -> int:
        return len(self._values)

    @property
    def front_indices(self) -> tuple[int, ...]:
        return tuple(self._front)

    def front_values(self) -> np.ndarray:
        return self._front_values.copy()

    def values(self) -> np.ndarray:
        if not self._values:
            return np.empty((0, self.k))
        return np.vstack(self._values)

    def setting_ids(self) -> np.ndarray:
        return np.asarray(self._setting_ids, dtype=int)

    def epochs(self) -> np.ndarray:
        return np.asarray(self._epochs, dtype=int)

    def add(self, setting_id: int, epoch: int, y) -> None:
        y = np.asarray(y, dtype=float).reshape(-1)
        if y.shape[0] != self.k:
            raise ValueError(f"expected {self.k} objectives, got {y.shape[0]}")
        if not np.all(np.isfinite(y)):
            raise ValueError("objective values must be finite")
        if self._auto_ref:
            self.r = y.copy() if self.r is None else np.maximum(self.r, y)
        idx = len(self._values)
        self._values.append(y)
        self._setting_ids.append(int(setting_id))
        self._epochs.append(int(epoch))

        fv = self._front_values
        if fv.shape[0] == 0:
            self._front = [idx]
            self._front_values = y[None, :]
            return
        # covered: some front vector dominates y or equals it
        le_all = np.all(fv <= y, axis=1)
        if np.any(le_all):
            return
        beaten = np.all(y <= fv, axis=1)
        if np.any(beaten):
            keep = ~beaten
            self._front = [i for i, k_ in zip(self._front, keep) if k_]
            fv = fv[keep]
        self._front = self._front + [idx]
        self._front_values = np.concatenate([fv, y[None, :]], axis=0)

    def hv(self, r=None) -> float:
        r = self.r if r is None else r
        if r is None:
            raise ValueError("no reference point available")
        return hypervolume(self._front_values, r)

    def has_setting(self, setting_id: int) -> bool:
        return int(setting_id) in set(self._setting_ids)

    def setting_contribution(self, setting_id: int, r=None) -> float:
        """HV lost when the setting's observations are removed entirely.

        The remaining front is recomputed from the full archive minus the
        setting's entries, so points it shadowed resurface.
        """
        sid = int(setting_id)
        ids = self.setting_ids()
        if sid not in ids:
            raise KeyError(f"unknown setting id {sid}")
        r = self.r if r is None else np.asarray(r, dtype=float)
        values = self.values()
        rest = values[ids != sid]
        hv_full = hypervolume(self._front_values, r)
        if rest.shape[0] == 0:
            return hv_full
        rest_front = rest[non_dominated_mask(rest)]
        return max(0.0, hv_full - hypervolume(rest_front, r))
