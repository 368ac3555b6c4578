"""Command-line entry point for experiments and reporting."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np


def _cmd_run(args) -> int:
    from tmobo.harness.config import load_experiment_config
    from tmobo.harness.suite import run_suite

    config = load_experiment_config(args.config)
    manifest = run_suite(config, resume=args.resume, workers=args.workers)
    statuses = [c["status"] for c in manifest["cells"].values()]
    done = statuses.count("done")
    failed = statuses.count("failed")
    print(f"{done} cells done, {failed} failed -> {config.resolved_output_dir()}")
    return 0 if failed == 0 else 1


def _cmd_report(args) -> int:
    from tmobo.harness.report import write_report

    out_dir = args.out or (Path(args.results) / "report")
    info = write_report(args.results, out_dir, args.axis, normalize=args.normalize)
    print(
        f"wrote {info['series']} series for problems {info['problems']} -> {out_dir}"
    )
    return 0


def _cmd_front(args) -> int:
    from tmobo.core.hypervolume import hypervolume
    from tmobo.harness.metrics import estimate_true_front
    from tmobo.harness.report import export_front_csv, problems_and_algorithms
    from tmobo.harness.suite import trial_paths

    for problem in problems_and_algorithms(args.results):
        paths = trial_paths(args.results, problem=problem)
        front, r = estimate_true_front(paths)
        out = Path(args.results) / f"front_{problem}.csv"
        export_front_csv(front, r, out)
        print(
            f"{problem}: {front.shape[0]} front points, "
            f"r={np.round(r, 6).tolist()}, hv={hypervolume(front, r):.6f} -> {out}"
        )
    return 0


def _cmd_problems(args) -> int:
    from tmobo.problems import preset_label, preset_names, preset_problem

    if args.action == "list":
        for name in preset_names():
            prob = preset_problem(name)
            spec = prob.spec
            print(
                f"{name:12s} {preset_label(name):14s} d={spec.d} k={spec.k} "
                f"t_max={spec.t_max} curves={'/'.join(spec.curves)} "
                f"noise={spec.noise_frac[0]:g}"
            )
        print("tabular      load with a problem config: "
              '{"benchmark": "tabular", "path": "<csv>"}')
    return 0


def _cmd_selftest(args) -> int:
    from tmobo.harness.selftest import run_selftest

    return 0 if run_selftest() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmobo",
        description="Trajectory-based multi-objective Bayesian optimization harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment suite from a JSON config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--workers", type=int, default=None)
    p_run.add_argument("--resume", action="store_true")
    p_run.set_defaults(fn=_cmd_run)

    p_rep = sub.add_parser("report", help="compute metric series and export CSV/JSON")
    p_rep.add_argument("--results", required=True)
    p_rep.add_argument("--axis", choices=("iter", "epochs", "cost"), default="iter")
    p_rep.add_argument("--normalize", action="store_true")
    p_rep.add_argument("--out", default=None)
    p_rep.set_defaults(fn=_cmd_report)

    p_front = sub.add_parser("front", help="estimate the best known front per problem")
    p_front.add_argument("--results", required=True)
    p_front.set_defaults(fn=_cmd_front)

    p_prob = sub.add_parser("problems", help="problem registry")
    p_prob.add_argument("action", choices=("list",))
    p_prob.set_defaults(fn=_cmd_problems)

    p_self = sub.add_parser("selftest", help="run the built-in oracle checks")
    p_self.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
