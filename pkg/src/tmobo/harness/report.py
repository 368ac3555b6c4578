"""Result persistence: convergence/box-plot CSVs and a JSON summary."""

from __future__ import annotations

import csv
import json
from collections import defaultdict
from pathlib import Path

import numpy as np

from tmobo.harness.metrics import (
    MetricSeries,
    aggregate,
    estimate_true_front,
    final_log_diff,
    normalize_finals,
    shared_grid,
    trial_curve,
)
from tmobo.core.hypervolume import hypervolume
from tmobo.harness.suite import load_manifest, trial_paths
from tmobo.optimizers.records import load_trial

CONVERGENCE_COLUMNS = [
    "problem",
    "optimizer",
    "axis",
    "grid",
    "mean",
    "sd",
    "se",
    "n_trials",
]
BOXPLOT_COLUMNS = ["problem", "optimizer", "trial", "final_log10_hv_diff", "normalized"]


def _fmt(v) -> str:
    return repr(float(v))


def problems_and_algorithms(results_dir) -> dict[str, list[str]]:
    manifest = load_manifest(results_dir)
    out: dict[str, list[str]] = defaultdict(list)
    for key, entry in sorted(manifest["cells"].items()):
        if entry.get("status") != "done":
            continue
        pname, alg, _ = key.rsplit("__", 2)
        if alg not in out[pname]:
            out[pname].append(alg)
    return dict(out)


def compute_problem_report(results_dir, problem: str, axis: str):
    """Per-problem series (one per optimizer) plus final values per trial."""
    all_paths = trial_paths(results_dir, problem=problem)
    front, r = estimate_true_front(all_paths)
    hv_star = hypervolume(front, r)
    series = []
    finals = []  # (optimizer, trial_index, value)
    for alg in problems_and_algorithms(results_dir)[problem]:
        paths = trial_paths(results_dir, problem=problem, algorithm=alg)
        curves = []
        for i, path in enumerate(paths):
            _, records = load_trial(path)
            curves.append(trial_curve(records, hv_star, r, axis))
            finals.append((alg, i, final_log_diff(records, hv_star, r)))
        series.append((alg, curves))
    grid = shared_grid([c for _, cs in series for c in cs], axis)
    out_series = [
        aggregate(problem, alg, axis, grid, curves) for alg, curves in series
    ]
    return out_series, finals, front, r, hv_star


def export_convergence_csv(series_list: list[MetricSeries], path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CONVERGENCE_COLUMNS)
        for s in series_list:
            for g, m, sd, se in zip(s.grid, s.mean, s.sd, s.se):
                writer.writerow(
                    [s.problem, s.optimizer, s.axis, _fmt(g), _fmt(m), _fmt(sd), _fmt(se), s.n_trials]
                )


def read_convergence_csv(path) -> list[dict]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CONVERGENCE_COLUMNS:
            raise ValueError(f"{path}: unexpected convergence schema {reader.fieldnames}")
        return [dict(row) for row in reader]


def export_boxplot_csv(finals_by_problem: dict, path, normalize: bool = True) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(BOXPLOT_COLUMNS)
        for problem, finals in finals_by_problem.items():
            values = np.asarray([v for _, _, v in finals])
            norm = normalize_finals(values) if normalize else values
            for (alg, trial, value), nv in zip(finals, norm):
                writer.writerow([problem, alg, trial, _fmt(value), _fmt(nv)])


def read_boxplot_csv(path) -> list[dict]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != BOXPLOT_COLUMNS:
            raise ValueError(f"{path}: unexpected box-plot schema {reader.fieldnames}")
        return [dict(row) for row in reader]


def export_summary_json(finals_by_problem: dict, extras: dict, path) -> None:
    summary: dict = {"problems": {}}
    for problem, finals in finals_by_problem.items():
        by_alg: dict[str, list[float]] = defaultdict(list)
        for alg, _, value in finals:
            by_alg[alg].append(value)
        summary["problems"][problem] = {
            alg: {
                "mean": float(np.mean(vs)),
                "median": float(np.median(vs)),
                "std": float(np.std(vs, ddof=1)) if len(vs) > 1 else 0.0,
                "min": float(np.min(vs)),
                "max": float(np.max(vs)),
                "n_trials": len(vs),
            }
            for alg, vs in by_alg.items()
        }
        summary["problems"][problem]["_front"] = extras.get(problem, {})
    Path(path).write_text(
        json.dumps(summary, indent=2, sort_keys=True), encoding="utf-8"
    )


def export_front_csv(front: np.ndarray, r: np.ndarray, path) -> None:
    k = front.shape[1] if front.size else len(r)
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{i}" for i in range(k)])
        for row in front[np.lexsort(front.T[::-1])] if front.size else []:
            writer.writerow([_fmt(v) for v in row])


def write_report(results_dir, out_dir, axis: str, normalize: bool = False) -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    all_series: list[MetricSeries] = []
    finals_by_problem: dict[str, list] = {}
    extras: dict[str, dict] = {}
    for problem in problems_and_algorithms(results_dir):
        series, finals, front, r, hv_star = compute_problem_report(
            results_dir, problem, axis
        )
        all_series.extend(series)
        finals_by_problem[problem] = finals
        extras[problem] = {
            "hv_star": hv_star,
            "ref_point": [float(v) for v in r],
            "front_size": int(front.shape[0]),
        }
    export_convergence_csv(all_series, out_dir / "convergence.csv")
    problems = list(finals_by_problem)
    if len(problems) > 1:
        # one figure per problem: emit a per-problem slice alongside
        for problem in problems:
            export_convergence_csv(
                [s for s in all_series if s.problem == problem],
                out_dir / f"convergence_{problem}.csv",
            )
    export_boxplot_csv(
        finals_by_problem, out_dir / "boxplot.csv", normalize=normalize
    )
    export_summary_json(finals_by_problem, extras, out_dir / "summary.json")
    return {"series": len(all_series), "problems": problems}
