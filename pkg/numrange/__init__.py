from .support import SupportFunction, family_eigvalsh, family_top_eigh, hermitian_family, uniform_thetas
from .radius import (
    CrawfordResult,
    RadiusResult,
    crawford_number,
    numerical_radius,
    numerical_radius_imag,
    radius_grid_oracle,
)
from .boundary import BOUNDARY_COLUMNS, RangeSample, boundary_frame, range_boundary, write_boundary_csv

__all__ = [
    "SupportFunction",
    "family_eigvalsh",
    "family_top_eigh",
    "hermitian_family",
    "uniform_thetas",
    "CrawfordResult",
    "RadiusResult",
    "crawford_number",
    "numerical_radius",
    "numerical_radius_imag",
    "radius_grid_oracle",
    "BOUNDARY_COLUMNS",
    "RangeSample",
    "boundary_frame",
    "range_boundary",
    "write_boundary_csv",
]
