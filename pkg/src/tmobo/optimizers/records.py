"""Optimizer configuration and per-trial run records (JSONL on disk)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

ALGORITHMS = ("tmobo", "tmobo_nes", "tmobo_p", "parego_t", "ehvi_t", "random_t")

WALL_TIME_FIELDS = ("wall_time_s",)


@dataclass
class OptimizerConfig:
    algorithm: str
    iterations: int
    seed: int = 0
    n_init: int | None = None  # default 2(d+1)
    mc_samples: int = 128
    n_candidates: int | None = None  # default 100d (100(d+1) for baselines)
    gamma_max: float = 0.2
    beta: float = 2.0
    augment_cap: int = 10
    replications: int = 1
    epoch_budget: int | None = None
    failure_limit: int = 5
    temporal_kernels: tuple[str, ...] | None = None
    tchebycheff_rho: float = 0.05
    stop_strict: bool = False  # stop strictly after t* instead of at it
    stop_hvi_criterion: bool = False  # promising = LCB adds HVI, not dominance

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.mc_samples < 1 or self.replications < 1 or self.augment_cap < 1:
            raise ValueError("counts must be >= 1")
        if self.epoch_budget is not None and self.epoch_budget <= 0:
            raise ValueError("epoch budget must be positive")
        if self.n_init is not None and self.n_init < 1:
            raise ValueError("n_init must be >= 1")
        if self.n_candidates is not None and self.n_candidates < 1:
            raise ValueError("n_candidates must be >= 1")
        if self.gamma_max <= 0 or self.beta <= 0:
            raise ValueError("gamma_max and beta must be positive")
        if self.temporal_kernels is not None:
            self.temporal_kernels = tuple(self.temporal_kernels)

    def to_dict(self) -> dict:
        out = asdict(self)
        if out["temporal_kernels"] is not None:
            out["temporal_kernels"] = list(out["temporal_kernels"])
        return out

    @staticmethod
    def from_dict(data: dict) -> "OptimizerConfig":
        known = set(OptimizerConfig.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown optimizer config keys: {sorted(unknown)}")
        cfg = dict(data)
        if cfg.get("temporal_kernels") is not None:
            cfg["temporal_kernels"] = tuple(cfg["temporal_kernels"])
        return OptimizerConfig(**cfg)


@dataclass
class RunRecord:
    """One initialization or iteration step of a trial."""

    phase: str  # "init" | "iteration"
    index: int
    setting_id: int
    setting: list[float]
    stop_epoch: int
    observations: list[list[float]]  # rows [epoch, f0, .., f{k-1}]
    hv: float
    ref_point: list[float]
    cumulative_epochs: int
    cumulative_cost: float
    wall_time_s: float
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def dump_trial(meta: dict, records: list[RunRecord], path) -> None:
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"phase": "meta", **meta}, sort_keys=True) + "\n")
        for rec in records:
            fh.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")
    tmp.replace(path)


def load_trial(path) -> tuple[dict, list[dict]]:
    meta = None
    records = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if obj.get("phase") == "meta":
                meta = obj
            else:
                records.append(obj)
    if meta is None:
        raise ValueError(f"{path}: missing meta record")
    return meta, records


def strip_wall_time(record: dict) -> dict:
    return {k: v for k, v in record.items() if k not in WALL_TIME_FIELDS}
