import tmobo
from tmobo.optimizers.baselines import (
    expected_improvement,
    run_joint_baseline,
    scalarize_tchebycheff,
)
from tmobo.optimizers.loop import run_trajectory_optimizer
from tmobo.optimizers.records import (
    ALGORITHMS,
    OptimizerConfig,
    RunRecord,
    dump_trial,
    load_trial,
    strip_wall_time,
)
from tmobo.optimizers.seeding import derive_trial_seed, substream
from tmobo.optimizers.sobol import sobol_init
from tmobo.problems.problem import Problem


def update_reference_point(r, observation):
    """Componentwise worst (max) of the current r and a new observation."""
    import numpy as np

    r = np.asarray(r, dtype=float)
    observation = np.asarray(observation, dtype=float)
    if r.shape != observation.shape:
        raise ValueError("length mismatch")
    return np.maximum(r, observation)


def run_optimizer(problem: Problem, config: OptimizerConfig):
    """Run one trial; returns (meta, records)."""
    meta = {
        "problem": problem.spec.to_dict(),
        "optimizer": config.to_dict(),
        "algorithm": config.algorithm,
        "seed": config.seed,
        "code_version": tmobo.__version__,
    }
    if config.algorithm in ("tmobo", "tmobo_nes", "tmobo_p"):
        records = run_trajectory_optimizer(problem, config)
    else:
        records = run_joint_baseline(problem, config)
    return meta, records


def run_tmobo(problem: Problem, config: OptimizerConfig):
    """The trajectory-based optimizer with early stopping (full loop)."""
    if config.algorithm != "tmobo":
        raise ValueError("run_tmobo requires algorithm='tmobo'")
    return run_optimizer(problem, config)


def run_variant(problem: Problem, config: OptimizerConfig):
    """Any non-default algorithm id (tmobo_nes, tmobo_p, or a baseline)."""
    if config.algorithm == "tmobo":
        raise ValueError("use run_tmobo for the default algorithm")
    return run_optimizer(problem, config)


__all__ = [
    "ALGORITHMS",
    "OptimizerConfig",
    "RunRecord",
    "derive_trial_seed",
    "dump_trial",
    "expected_improvement",
    "load_trial",
    "run_joint_baseline",
    "run_optimizer",
    "run_tmobo",
    "run_trajectory_optimizer",
    "run_variant",
    "scalarize_tchebycheff",
    "sobol_init",
    "strip_wall_time",
    "substream",
    "update_reference_point",
]
