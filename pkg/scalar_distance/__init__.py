from .distance import ScalarDistanceResult, distance_to_scalars, disk_grid, pick_minimum
from .crawford_gap import CrawfordGapResult, crawford_gap_rhs, gap_value, shifted_norms

__all__ = [
    "ScalarDistanceResult",
    "distance_to_scalars",
    "disk_grid",
    "pick_minimum",
    "CrawfordGapResult",
    "crawford_gap_rhs",
    "gap_value",
    "shifted_norms",
]
