"""Experiment configuration: JSON in, validated dataclasses out."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

OUTPUT_DIR_ENV = "TMOBO_RESULTS_DIR"


@dataclass
class ExperimentCell:
    problem: dict
    optimizer: dict

    @staticmethod
    def from_dict(data: dict) -> "ExperimentCell":
        unknown = set(data) - {"problem", "optimizer"}
        if unknown:
            raise ValueError(f"unknown cell keys: {sorted(unknown)}")
        if "problem" not in data or "optimizer" not in data:
            raise ValueError("cell needs both problem and optimizer")
        return ExperimentCell(dict(data["problem"]), dict(data["optimizer"]))


@dataclass
class ExperimentConfig:
    cells: list[ExperimentCell]
    trials: int
    output_dir: str
    workers: int = 1
    master_seed: int = 0

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not self.cells:
            raise ValueError("need at least one (problem, optimizer) cell")

    @staticmethod
    def from_dict(data: dict) -> "ExperimentConfig":
        known = {"cells", "trials", "output_dir", "workers", "master_seed"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown experiment config keys: {sorted(unknown)}")
        cells = [ExperimentCell.from_dict(c) for c in data.get("cells", [])]
        return ExperimentConfig(
            cells=cells,
            trials=int(data["trials"]),
            output_dir=str(data["output_dir"]),
            workers=int(data.get("workers", 1)),
            master_seed=int(data.get("master_seed", 0)),
        )

    def to_dict(self) -> dict:
        return {
            "cells": [
                {"problem": c.problem, "optimizer": c.optimizer} for c in self.cells
            ],
            "trials": self.trials,
            "output_dir": self.output_dir,
            "workers": self.workers,
            "master_seed": self.master_seed,
        }

    def resolved_output_dir(self) -> Path:
        return Path(os.environ.get(OUTPUT_DIR_ENV, self.output_dir))


def load_experiment_config(path) -> ExperimentConfig:
    with Path(path).open(encoding="utf-8") as fh:
        return ExperimentConfig.from_dict(json.load(fh))
