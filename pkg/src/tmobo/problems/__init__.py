from tmobo.problems.benchmarks import BENCHMARK_IDS, base_objectives
from tmobo.problems.curves import CURVE_KINDS, curve
from tmobo.problems.presets import preset_label, preset_names, preset_problem
from tmobo.problems.problem import (
    Problem,
    ProblemSpec,
    SyntheticProblem,
    TrainingSession,
)
from tmobo.problems.tabular import (
    TabularLoadError,
    TabularProblem,
    load_tabular_problem,
    write_trajectory_table,
)


def make_problem(config: dict) -> Problem:
    """Build a problem from a config dict (preset, full spec, or tabular)."""
    cfg = dict(config)
    if "preset" in cfg:
        name = cfg.pop("preset")
        allowed = {"d", "t_max", "noise_frac"}
        unknown = set(cfg) - allowed
        if unknown:
            raise ValueError(f"unknown problem config keys: {sorted(unknown)}")
        return preset_problem(name, **cfg)
    if cfg.get("benchmark") == "tabular":
        allowed = {"benchmark", "path", "name", "nearest", "noise_frac"}
        unknown = set(cfg) - allowed
        if unknown:
            raise ValueError(f"unknown problem config keys: {sorted(unknown)}")
        cfg.pop("benchmark")
        path = cfg.pop("path")
        return load_tabular_problem(path, **cfg)
    allowed = {
        "name",
        "d",
        "k",
        "t_max",
        "benchmark",
        "curves",
        "noise_frac",
        "bounds",
        "cost_objective",
    }
    unknown = set(cfg) - allowed
    if unknown:
        raise ValueError(f"unknown problem config keys: {sorted(unknown)}")
    k = cfg["k"]
    nf = cfg.get("noise_frac", 0.0)
    cfg["noise_frac"] = (nf,) * k if not isinstance(nf, (list, tuple)) else tuple(nf)
    cfg["curves"] = tuple(cfg["curves"])
    if "bounds" in cfg:
        cfg["bounds"] = tuple(tuple(b) for b in cfg["bounds"])
    return SyntheticProblem(ProblemSpec(**cfg))


__all__ = [
    "BENCHMARK_IDS",
    "CURVE_KINDS",
    "Problem",
    "ProblemSpec",
    "SyntheticProblem",
    "TabularLoadError",
    "TabularProblem",
    "TrainingSession",
    "base_objectives",
    "curve",
    "load_tabular_problem",
    "make_problem",
    "preset_label",
    "preset_names",
    "preset_problem",
    "write_trajectory_table",
]
