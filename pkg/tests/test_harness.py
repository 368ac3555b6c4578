import json
from pathlib import Path

import numpy as np
import pytest

from tmobo.core.hypervolume import hypervolume
from tmobo.harness.config import ExperimentConfig, load_experiment_config
from tmobo.harness.metrics import (
    estimate_true_front,
    final_log_diff,
    shared_grid,
    step_interp,
    trial_curve,
)
from tmobo.harness.report import (
    compute_problem_report,
    read_boxplot_csv,
    read_convergence_csv,
    write_report,
)
from tmobo.harness.selftest import run_selftest
from tmobo.harness.suite import load_manifest, run_suite, trial_paths
from tmobo.optimizers.records import load_trial, strip_wall_time


def experiment_config(tmp_path, trials=3, algorithms=("random_t", "parego_t")):
    return ExperimentConfig(
        cells=[
            {
                "problem": {"preset": "zdt1_mm", "d": 2, "t_max": 4},
                "optimizer": {
                    "algorithm": alg,
                    "iterations": 2,
                    "n_init": 2,
                    "n_candidates": 10,
                    "mc_samples": 8,
                },
            }
            for alg in algorithms
        ],
        trials=trials,
        output_dir=str(tmp_path / "results"),
        master_seed=7,
    )


def normalize_cells(config):
    from tmobo.harness.config import ExperimentCell

    config.cells = [ExperimentCell.from_dict(c) for c in config.cells]
    return config


@pytest.fixture(scope="module")
def suite_dir(tmp_path_factory):
    tmp_path = tmp_path_factory.mktemp("suite")
    config = normalize_cells(experiment_config(tmp_path))
    manifest = run_suite(config)
    return tmp_path / "results", manifest


def test_suite_cardinality(suite_dir):
    results_dir, manifest = suite_dir
    assert len(manifest["cells"]) == 2 * 3  # optimizers x trials
    files = list(Path(results_dir).glob("*.jsonl"))
    assert len(files) == 6
    assert (Path(results_dir) / "manifest.json").exists()
    assert all(c["status"] == "done" for c in manifest["cells"].values())


def test_rerun_is_byte_identical_modulo_wall_time(suite_dir, tmp_path):
    results_dir, manifest = suite_dir
    config = normalize_cells(experiment_config(tmp_path))
    manifest2 = run_suite(config)
    for key, entry in manifest["cells"].items():
        a = Path(results_dir) / entry["file"]
        b = tmp_path / "results" / manifest2["cells"][key]["file"]
        lines_a = a.read_text().splitlines()
        lines_b = b.read_text().splitlines()
        assert len(lines_a) == len(lines_b)
        for la, lb in zip(lines_a, lines_b):
            da = strip_wall_time(json.loads(la))
            db = strip_wall_time(json.loads(lb))
            assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


def test_resume_skips_done_cells(suite_dir, monkeypatch):
    results_dir, _ = suite_dir
    config = normalize_cells(
        experiment_config(Path(results_dir).parent, trials=3)
    )
    calls = []
    import tmobo.harness.suite as suite_mod

    real = suite_mod._run_cell

    def spy(args):
        calls.append(args[0])
        return real(args)

    monkeypatch.setattr(suite_mod, "_run_cell", spy)
    run_suite(config, resume=True)
    assert calls == []  # everything already done


def test_estimate_true_front_invariants(suite_dir):
    results_dir, _ = suite_dir
    paths = trial_paths(results_dir, problem="zdt1_mm")
    front, r = estimate_true_front(paths)
    hv_star = hypervolume(front, r)
    front_rev, r_rev = estimate_true_front(list(reversed(paths)))
    assert hypervolume(front_rev, r_rev) == pytest.approx(hv_star)
    assert sorted(map(tuple, front)) == sorted(map(tuple, front_rev))
    # union front at least as good as any single trial's final front
    for path in paths:
        _, records = load_trial(path)
        assert final_log_diff(records, hv_star, r) >= np.log10(1e-12) - 1e-9


def test_single_trial_front_is_its_own_final_front(suite_dir):
    results_dir, _ = suite_dir
    path = trial_paths(results_dir, problem="zdt1_mm")[0]
    front, r = estimate_true_front([path])
    _, records = load_trial(path)
    assert final_log_diff(records, hypervolume(front, r), r) == pytest.approx(-12.0)


def test_trial_curve_hand_built():
    r = np.array([4.0, 4.0])
    records = [
        {
            "phase": "init",
            "setting_id": 0,
            "observations": [[1, 3.0, 3.0]],
            "cumulative_epochs": 1,
            "cumulative_cost": 3.0,
        },
        {
            "phase": "iteration",
            "setting_id": 1,
            "observations": [[1, 1.0, 3.0], [2, 2.0, 1.0]],
            "cumulative_epochs": 3,
            "cumulative_cost": 7.0,
        },
        {
            "phase": "iteration",
            "setting_id": 2,
            "observations": [[1, 0.5, 0.5]],
            "cumulative_epochs": 4,
            "cumulative_cost": 7.5,
        },
    ]
    hv_star = 12.25  # front {(0.5, 0.5)} under r
    xs, vals = trial_curve(records, hv_star, r, "iter")
    assert xs.tolist() == [0.0, 1.0, 2.0]
    assert vals[0] == pytest.approx(np.log10(12.25 - 1.0))
    assert vals[1] == pytest.approx(np.log10(12.25 - 7.0))
    assert vals[2] == pytest.approx(-12.0)  # clamp at the floor
    assert np.all(np.diff(vals) <= 1e-12)  # non-increasing
    xs_e, _ = trial_curve(records, hv_star, r, "epochs")
    assert xs_e.tolist() == [1.0, 3.0, 4.0]
    xs_c, _ = trial_curve(records, hv_star, r, "cost")
    assert xs_c.tolist() == [3.0, 7.0, 7.5]


def test_step_interp_backfills_and_carries_forward():
    xs = np.array([2.0, 4.0])
    vals = np.array([5.0, 3.0])
    grid = np.array([0.0, 2.0, 3.0, 4.0, 9.0])
    assert step_interp(grid, xs, vals).tolist() == [5.0, 5.0, 5.0, 3.0, 3.0]


def test_shared_grid_properties():
    curves = [
        (np.array([1.0, 5.0]), np.array([0.0, -1.0])),
        (np.array([2.0, 9.0]), np.array([0.0, -2.0])),
    ]
    grid = shared_grid(curves, "epochs")
    assert grid[0] == 1.0 and grid[-1] == 9.0
    assert np.all(np.diff(grid) > 0)
    it_grid = shared_grid([(np.array([0.0, 3.0]), np.array([0, 0]))], "iter")
    assert it_grid.tolist() == [0.0, 1.0, 2.0, 3.0]


def test_report_round_trip(suite_dir, tmp_path):
    results_dir, _ = suite_dir
    out = tmp_path / "report"
    info = write_report(results_dir, out, "iter", normalize=True)
    assert info["problems"] == ["zdt1_mm"]
    conv = read_convergence_csv(out / "convergence.csv")
    assert {row["optimizer"] for row in conv} == {"random_t", "parego_t"}
    box = read_boxplot_csv(out / "boxplot.csv")
    assert len(box) == 6  # optimizers x trials
    norms = [float(row["normalized"]) for row in box]
    assert min(norms) == 0.0 and max(norms) == 1.0
    summary = json.loads((out / "summary.json").read_text())
    assert "zdt1_mm" in summary["problems"]
    # recompute mean/se from the CSV and cross-check against the series
    series, finals, front, r, hv_star = compute_problem_report(
        results_dir, "zdt1_mm", "iter"
    )
    first = series[0]
    rows = [
        row
        for row in conv
        if row["optimizer"] == first.optimizer and row["axis"] == "iter"
    ]
    assert len(rows) == len(first.grid)
    for row, m, sd, n in zip(rows, first.mean, first.sd, [first.n_trials] * 999):
        assert float(row["mean"]) == pytest.approx(m, abs=1e-12)
        assert float(row["se"]) == pytest.approx(sd / np.sqrt(n), abs=1e-12)


def test_config_validation_and_env_override(tmp_path, monkeypatch):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(
        json.dumps(
            {
                "cells": [
                    {
                        "problem": {"preset": "zdt1_mm"},
                        "optimizer": {"algorithm": "random_t", "iterations": 1},
                    }
                ],
                "trials": 1,
                "output_dir": str(tmp_path / "a"),
            }
        )
    )
    config = load_experiment_config(cfg_path)
    assert config.trials == 1
    monkeypatch.setenv("TMOBO_RESULTS_DIR", str(tmp_path / "b"))
    assert config.resolved_output_dir() == tmp_path / "b"

    bad = {"cells": [], "trials": 1, "output_dir": "x", "bogus": 1}
    cfg_path.write_text(json.dumps(bad))
    with pytest.raises(ValueError, match="unknown experiment config keys"):
        load_experiment_config(cfg_path)


def test_failed_cell_recorded_and_suite_continues(tmp_path):
    config = ExperimentConfig(
        cells=[
            {
                "problem": {"preset": "zdt1_mm", "d": 2, "t_max": 3},
                "optimizer": {"algorithm": "random_t", "iterations": 0, "n_init": 40},
            },
            {
                "problem": {"preset": "nonexistent_preset"},
                "optimizer": {"algorithm": "random_t", "iterations": 1},
            },
        ],
        trials=1,
        output_dir=str(tmp_path / "res"),
    )
    config = normalize_cells(config)
    manifest = run_suite(config)
    statuses = sorted(c["status"] for c in manifest["cells"].values())
    assert statuses == ["done", "failed"]
    failed = [c for c in manifest["cells"].values() if c["status"] == "failed"][0]
    assert "error" in failed


def test_selftest_passes():
    lines = []
    assert run_selftest(print_fn=lines.append)
    assert all(line.startswith("[PASS]") for line in lines)
