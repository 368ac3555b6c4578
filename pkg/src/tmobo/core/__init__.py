from tmobo.core.archive import ParetoArchive
from tmobo.core.dominance import dominates, non_dominated_mask, pareto_front
from tmobo.core.domain import QueryPair, Trajectory
from tmobo.core.hypervolume import (
    Staircase2D,
    hv_inclusion_exclusion,
    hvi_set,
    hypervolume,
)

__all__ = [
    "ParetoArchive",
    "QueryPair",
    "Staircase2D",
    "Trajectory",
    "dominates",
    "hv_inclusion_exclusion",
    "hvi_set",
    "hypervolume",
    "non_dominated_mask",
    "pareto_front",
]
