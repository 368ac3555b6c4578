"""Experiment orchestration: run every (problem, optimizer, trial) cell,
persist one RunRecord stream per trial, and keep a resumable manifest."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path

import tmobo
from tmobo.harness.config import ExperimentConfig
from tmobo.optimizers import OptimizerConfig, derive_trial_seed, dump_trial, run_optimizer
from tmobo.problems import make_problem

MANIFEST_NAME = "manifest.json"


def cell_key(problem_name: str, algorithm: str, trial: int) -> str:
    return f"{problem_name}__{algorithm}__trial{trial:03d}"


def _problem_name(problem_cfg: dict) -> str:
    if "preset" in problem_cfg:
        return problem_cfg["preset"]
    return problem_cfg.get("name") or problem_cfg.get("path", "problem")


def _run_cell(args: tuple) -> tuple[str, str, str | None]:
    key, problem_cfg, optimizer_cfg, seed, out_path = args
    try:
        problem = make_problem(problem_cfg)
        opt = dict(optimizer_cfg)
        opt["seed"] = seed
        config = OptimizerConfig.from_dict(opt)
        meta, records = run_optimizer(problem, config)
        dump_trial(meta, records, out_path)
        return key, "done", None
    except Exception as exc:  # failures are recorded, suite continues
        return key, "failed", f"{type(exc).__name__}: {exc}"


def _write_manifest(path: Path, manifest: dict) -> None:
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True), encoding="utf-8")
    tmp.replace(path)


def run_suite(
    config: ExperimentConfig, resume: bool = False, workers: int | None = None
) -> dict:
    out_dir = config.resolved_output_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest_path = out_dir / MANIFEST_NAME

    manifest = {
        "code_version": tmobo.__version__,
        "config": config.to_dict(),
        "cells": {},
    }
    if resume and manifest_path.exists():
        previous = json.loads(manifest_path.read_text(encoding="utf-8"))
        if previous.get("config") != manifest["config"]:
            raise ValueError("manifest config differs; refusing to resume")
        manifest["cells"] = {
            k: v
            for k, v in previous.get("cells", {}).items()
            if v.get("status") == "done"
        }

    jobs = []
    for cell in config.cells:
        pname = _problem_name(cell.problem)
        algorithm = cell.optimizer.get("algorithm")
        for trial in range(config.trials):
            key = cell_key(pname, algorithm, trial)
            seed = derive_trial_seed(config.master_seed, pname, algorithm, trial)
            fname = f"{key}.jsonl"
            entry = {"file": fname, "seed": seed, "status": "pending"}
            if key in manifest["cells"]:
                continue
            manifest["cells"][key] = entry
            jobs.append((key, cell.problem, cell.optimizer, seed, str(out_dir / fname)))

    n_workers = workers if workers is not None else config.workers
    if n_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            futures = [pool.submit(_run_cell, job) for job in jobs]
            for future in as_completed(futures):
                key, status, error = future.result()
                manifest["cells"][key]["status"] = status
                if error:
                    manifest["cells"][key]["error"] = error
                _write_manifest(manifest_path, manifest)
    else:
        for job in jobs:
            key, status, error = _run_cell(job)
            manifest["cells"][key]["status"] = status
            if error:
                manifest["cells"][key]["error"] = error
            _write_manifest(manifest_path, manifest)
    _write_manifest(manifest_path, manifest)
    return manifest


def load_manifest(results_dir) -> dict:
    path = Path(results_dir) / MANIFEST_NAME
    return json.loads(path.read_text(encoding="utf-8"))


def trial_paths(results_dir, problem: str | None = None, algorithm: str | None = None):
    """Completed trial files from the manifest, optionally filtered."""
    results_dir = Path(results_dir)
    manifest = load_manifest(results_dir)
    out = []
    for key, entry in sorted(manifest["cells"].items()):
        if entry.get("status") != "done":
            continue
        pname, alg, _ = key.rsplit("__", 2)
        if problem is not None and pname != problem:
            continue
        if algorithm is not None and alg != algorithm:
            continue
        out.append(results_dir / entry["file"])
    return out
