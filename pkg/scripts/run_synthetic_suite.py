#!/usr/bin/env python3
"""Run a synthetic benchmark comparison end to end.

Builds an experiment config for the requested presets and algorithms,
runs every trial, and writes the report CSVs that the plotting package
consumes.

Example:
    python scripts/run_synthetic_suite.py --problems zdt1_mm zdt2_mq \
        --algorithms tmobo ehvi_t random_t --trials 5 --iterations 30 \
        --out results/synthetic
"""

import argparse
import os
import sys

os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from tmobo.harness.config import ExperimentConfig
from tmobo.harness.report import write_report
from tmobo.harness.suite import run_suite
from tmobo.optimizers.records import ALGORITHMS
from tmobo.problems import preset_names


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--problems", nargs="+", default=["zdt1_mm"],
                        choices=preset_names())
    parser.add_argument("--algorithms", nargs="+", default=["tmobo", "random_t"],
                        choices=list(ALGORITHMS))
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--iterations", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--axis", choices=("iter", "epochs", "cost"), default="iter")
    parser.add_argument("--out", default="results/synthetic")
    args = parser.parse_args()

    config = ExperimentConfig.from_dict(
        {
            "cells": [
                {
                    "problem": {"preset": p},
                    "optimizer": {"algorithm": a, "iterations": args.iterations},
                }
                for p in args.problems
                for a in args.algorithms
            ],
            "trials": args.trials,
            "output_dir": args.out,
            "workers": args.workers,
            "master_seed": args.seed,
        }
    )
    manifest = run_suite(config)
    failed = [k for k, c in manifest["cells"].items() if c["status"] != "done"]
    if failed:
        print(f"failed cells: {failed}", file=sys.stderr)
        return 1
    info = write_report(args.out, os.path.join(args.out, "report"), args.axis,
                        normalize=True)
    print(f"report for {info['problems']} written under {args.out}/report")
    print("render with: node frontend/dist/cli.js plot --kind convergence "
          f"--in {args.out}/report/convergence.csv --out convergence.svg")
    return 0


if __name__ == "__main__":
    sys.exit(main())
