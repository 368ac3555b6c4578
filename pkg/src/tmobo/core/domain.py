"""Domain types shared across the optimizer stack.

Objective vectors are plain float arrays of length k (minimization
throughout).  Hyperparameter settings live in the unit cube; problems map
them to native bounds internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class QueryPair:
    """A hyperparameter setting paired with an epoch index."""

    x: np.ndarray
    t: int

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "x", x)
        if x.ndim != 1:
            raise ValueError("setting must be a 1-D vector")
        if np.any(x < 0.0) or np.any(x > 1.0):
            raise ValueError("setting coordinates must lie in [0, 1]")
        if int(self.t) < 1:
            raise ValueError("epoch index must be >= 1")
        object.__setattr__(self, "t", int(self.t))

    def validate_horizon(self, t_max: int) -> None:
        if self.t > t_max:
            raise ValueError(f"epoch {self.t} exceeds horizon {t_max}")


@dataclass
class Trajectory:
    """Per-epoch objective observations for one setting.

    Epochs are contiguous from 1: row i holds the observation at epoch
    i + 1.  Appending enforces the no-gap rule.
    """

    setting: np.ndarray
    values: np.ndarray = field(default=None)  # type: ignore[assignment]
    k: int | None = None

    def __post_init__(self) -> None:
        self.setting = np.asarray(self.setting, dtype=float)
        if self.values is None:
            if self.k is None:
                raise ValueError("need k to create an empty trajectory")
            self.values = np.empty((0, self.k), dtype=float)
        else:
            self.values = np.asarray(self.values, dtype=float)
            if self.values.ndim != 2:
                raise ValueError("values must be (epochs, k)")
            self.k = self.values.shape[1]
        if not np.all(np.isfinite(self.values)):
            raise ValueError("objective values must be finite")

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def last_epoch(self) -> int:
        return self.values.shape[0]

    def append(self, epoch: int, y: np.ndarray) -> None:
        if epoch != self.last_epoch + 1:
            raise ValueError(
                f"epoch {epoch} breaks contiguity (next is {self.last_epoch + 1})"
            )
        y = np.asarray(y, dtype=float).reshape(1, -1)
        if y.shape[1] != self.values.shape[1]:
            raise ValueError("objective count mismatch")
        if not np.all(np.isfinite(y)):
            raise ValueError("objective values must be finite")
        self.values = np.concatenate([self.values, y], axis=0)

    def at(self, epoch: int) -> np.ndarray:
        if not 1 <= epoch <= self.last_epoch:
            raise IndexError(f"epoch {epoch} not observed yet")
        return self.values[epoch - 1]
