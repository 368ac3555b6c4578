"""File-backed problems built from exported learning-curve tables.

CSV schema: header ``setting_id,x0..x{d-1},epoch,f0..f{k-1}``, UTF-8,
epochs 1-based and contiguous per setting.  Evaluation looks up the table
row for the queried setting; by default the setting must match a listed
one exactly, optionally the nearest listed setting is used.
"""

from __future__ import annotations

import csv
import re
from pathlib import Path

import numpy as np

from tmobo.problems.problem import Problem, ProblemSpec


class TabularLoadError(ValueError):
    pass


class TabularProblem(Problem):
    def __init__(
        self,
        spec: ProblemSpec,
        settings: np.ndarray,
        table: np.ndarray,
        nearest: bool = False,
    ) -> None:
        super().__init__(spec)
        self._settings = settings  # (m, d) unit-cube coordinates
        self._table = table  # (m, t_max, k)
        self.nearest = nearest

    def feasible_settings(self) -> np.ndarray:
        return self._settings.copy()

    def _locate(self, x_unit: np.ndarray) -> int:
        x = np.asarray(x_unit, dtype=float)
        dists = np.max(np.abs(self._settings - x[None, :]), axis=1)
        idx = int(np.argmin(dists))
        if not self.nearest and dists[idx] > 1e-9:
            raise KeyError(f"setting {x.tolist()} not listed in the table")
        return idx

    def noise_free(self, x_unit, t: int) -> np.ndarray:
        if not 1 <= t <= self.spec.t_max:
            raise ValueError(f"epoch {t} outside 1..{self.spec.t_max}")
        return self._table[self._locate(x_unit), t - 1].copy()

    def _estimate_ranges(self) -> np.ndarray:
        flat = self._table.reshape(-1, self.spec.k)
        return flat.max(axis=0) - flat.min(axis=0)


def load_tabular_problem(
    path, *, name: str | None = None, nearest: bool = False, noise_frac=0.0
) -> TabularProblem:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TabularLoadError(f"{path}: empty file") from None
        d, k = _parse_header(path, header)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise TabularLoadError(
                    f"{path}:{lineno}: ragged row with {len(row)} fields"
                    f" (expected {len(header)})"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise TabularLoadError(f"{path}:{lineno}: non-numeric field: {exc}")
    if not rows:
        raise TabularLoadError(f"{path}: no data rows")
    data = np.asarray(rows, dtype=float)
    sids = data[:, 0]
    xs = data[:, 1 : 1 + d]
    epochs = data[:, 1 + d]
    fs = data[:, 2 + d :]
    if np.any(epochs != np.round(epochs)) or np.any(epochs < 1):
        raise TabularLoadError(f"{path}: epochs must be positive integers")
    t_max = int(epochs.max())

    uniq = np.unique(sids)
    settings = np.empty((len(uniq), d))
    table = np.empty((len(uniq), t_max, k))
    for i, sid in enumerate(uniq):
        sel = sids == sid
        coords = xs[sel]
        if not np.allclose(coords, coords[0]):
            raise TabularLoadError(
                f"{path}: setting {sid:g} has inconsistent coordinates"
            )
        if np.any(coords[0] < 0) or np.any(coords[0] > 1):
            raise TabularLoadError(
                f"{path}: setting {sid:g} has coordinates outside [0,1]"
            )
        eps = epochs[sel].astype(int)
        expected = set(range(1, t_max + 1))
        have = set(eps.tolist())
        if have != expected:
            missing = sorted(expected - have)[:5]
            raise TabularLoadError(
                f"{path}: setting {sid:g} missing epochs {missing} of 1..{t_max}"
            )
        if len(eps) != len(set(eps.tolist())):
            raise TabularLoadError(f"{path}: setting {sid:g} has duplicate epochs")
        settings[i] = coords[0]
        table[i, eps - 1] = fs[sel]

    nf = (noise_frac,) * k if np.isscalar(noise_frac) else tuple(noise_frac)
    spec = ProblemSpec(
        name=name or path.stem,
        d=d,
        k=k,
        t_max=t_max,
        benchmark="tabular",
        curves=("none",) * k,
        noise_frac=nf,
    )
    return TabularProblem(spec, settings, table, nearest=nearest)


def write_trajectory_table(problem: Problem, settings: np.ndarray, path) -> None:
    """Export noise-free trajectories of the given settings as a table."""
    settings = np.atleast_2d(np.asarray(settings, dtype=float))
    spec = problem.spec
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["setting_id"]
            + [f"x{i}" for i in range(spec.d)]
            + ["epoch"]
            + [f"f{i}" for i in range(spec.k)]
        )
        for sid, x in enumerate(settings):
            for t in range(1, spec.t_max + 1):
                y = problem.noise_free(x, t)
                writer.writerow(
                    [sid, *(repr(float(v)) for v in x), t, *(repr(float(v)) for v in y)]
                )


def _parse_header(path: Path, header: list[str]) -> tuple[int, int]:
    cols = [c.strip() for c in header]
    if not cols or cols[0] != "setting_id":
        raise TabularLoadError(f"{path}: header must start with setting_id")
    xs = [c for c in cols if re.fullmatch(r"x\d+", c)]
    fs = [c for c in cols if re.fullmatch(r"f\d+", c)]
    d, k = len(xs), len(fs)
    expected = (
        ["setting_id"] + [f"x{i}" for i in range(d)] + ["epoch"] + [f"f{i}" for i in range(k)]
    )
    if cols != expected or d < 1 or k < 1:
        raise TabularLoadError(
            f"{path}: header must be setting_id,x0..x{{d-1}},epoch,f0..f{{k-1}}"
        )
    return d, k
