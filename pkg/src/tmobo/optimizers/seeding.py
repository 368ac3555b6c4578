"""Deterministic seed derivation and labeled RNG substreams.

Every stochastic consumer (initialization, acquisition sampling, noise,
perturbations) draws from its own labeled stream so trials replay
bitwise-identically from (problem, config, seed).
"""

from __future__ import annotations

import hashlib

import numpy as np


def _stable_int(value) -> int:
    if isinstance(value, (int, np.integer)):
        return int(value) & 0xFFFFFFFFFFFFFFFF
    digest = hashlib.sha256(str(value).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def derive_trial_seed(
    master_seed: int, problem_name: str, algorithm: str, trial_index: int
) -> int:
    key = f"{master_seed}|{problem_name}|{algorithm}|{trial_index}"
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def substream(trial_seed: int, *labels) -> np.random.Generator:
    entropy = [_stable_int(trial_seed)] + [_stable_int(l) for l in labels]
    return np.random.default_rng(np.random.SeedSequence(entropy))
