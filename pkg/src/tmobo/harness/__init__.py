from tmobo.harness.config import (
    OUTPUT_DIR_ENV,
    ExperimentCell,
    ExperimentConfig,
    load_experiment_config,
)
from tmobo.harness.metrics import (
    AXES,
    LOG_FLOOR,
    MetricSeries,
    estimate_true_front,
    final_log_diff,
    trial_curve,
)
from tmobo.harness.report import write_report
from tmobo.harness.selftest import run_selftest
from tmobo.harness.suite import cell_key, load_manifest, run_suite, trial_paths

__all__ = [
    "AXES",
    "ExperimentCell",
    "ExperimentConfig",
    "LOG_FLOOR",
    "MetricSeries",
    "OUTPUT_DIR_ENV",
    "cell_key",
    "estimate_true_front",
    "final_log_diff",
    "load_experiment_config",
    "load_manifest",
    "run_selftest",
    "run_suite",
    "trial_curve",
    "trial_paths",
    "write_report",
]
