"""Preset synthetic problem suite.

Twenty problems: five benchmark landscapes, each crossed with four curve
combinations.  Label letters map to curve ids as follows: M is m_dec for
the first objective (loss-like measures decrease) and m_inc otherwise; Q
is the quadratic curve and P the periodic one.  Explicit curve ids in a
full problem config always override the preset mapping.
"""

from __future__ import annotations

from tmobo.problems.problem import ProblemSpec, SyntheticProblem

_BENCHMARKS = ("zdt1", "zdt2", "dtlz1", "dtlz2", "dtlz7")
_COMBOS = (("M", "M"), ("M", "Q"), ("M", "P"), ("Q", "P"))

DEFAULT_D = 5
DEFAULT_T_MAX = 50
DEFAULT_NOISE = 0.01


def _letter_to_curve(letter: str, objective: int) -> str:
    if letter == "M":
        return "m_dec" if objective == 0 else "m_inc"
    if letter == "Q":
        return "quad"
    if letter == "P":
        return "periodic"
    raise ValueError(f"unknown curve label {letter!r}")


def preset_names() -> list[str]:
    return [
        f"{b}_{a.lower()}{c.lower()}" for b in _BENCHMARKS for a, c in _COMBOS
    ]


def preset_label(name: str) -> str:
    bench, combo = name.rsplit("_", 1)
    return f"{bench.upper()}({combo[0].upper()}-{combo[1].upper()})"


def preset_problem(
    name: str,
    *,
    d: int = DEFAULT_D,
    t_max: int = DEFAULT_T_MAX,
    noise_frac: float = DEFAULT_NOISE,
) -> SyntheticProblem:
    if name not in preset_names():
        raise KeyError(f"unknown preset {name!r}; see preset_names()")
    bench, combo = name.rsplit("_", 1)
    curves = tuple(
        _letter_to_curve(letter.upper(), i) for i, letter in enumerate(combo)
    )
    spec = ProblemSpec(
        name=name,
        d=d,
        k=2,
        t_max=t_max,
        benchmark=bench,
        curves=curves,
        noise_frac=(noise_frac, noise_frac),
        cost_objective=1,
    )
    return SyntheticProblem(spec)
