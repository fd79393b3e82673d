"""
Report models for the tensor-product inequalities.

Reports are pydantic models so they serialize through ``model_dump``; matrix
operands travel in ``OperatorPair`` as read-only numpy arrays.
"""

import logging
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config import get_setting
from linalg import SizeLimitError, UnknownBoundError, as_matrix

logger = logging.getLogger(__name__)


class BoundId(str, Enum):
    """Closed set of inequality chains; values are the stable serialized names."""

    CLASSIC_NORM = "CLASSIC_NORM"
    RADIUS_PRODUCT = "RADIUS_PRODUCT"
    DOUBLE_RADIUS = "DOUBLE_RADIUS"
    DIST_REFINED = "DIST_REFINED"
    ABS_UPPER = "ABS_UPPER"
    CARTESIAN_UPPER = "CARTESIAN_UPPER"
    NORMDIFF_LOWER = "NORMDIFF_LOWER"
    ROT_NORMDIFF_LOWER = "ROT_NORMDIFF_LOWER"
    SQ_NORMDIFF_LOWER = "SQ_NORMDIFF_LOWER"
    SQ_ROT_LOWER = "SQ_ROT_LOWER"
    CRAWFORD_GAP = "CRAWFORD_GAP"

    @classmethod
    def parse(cls, name) -> "BoundId":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).upper())
        except ValueError:
            raise UnknownBoundError(f"Unknown bound id: {name}. Supported: {[b.value for b in cls]}")

    @property
    def order(self) -> int:
        return list(BoundId).index(self)


# Chain centers: the quantity a bound brackets.
CENTER_W = "w"
CENTER_W_SQUARED = "w^2"
CENTER_GAP = "norm^2 - w^2"


class EqualityKind(str, Enum):
    HALF_NORM = "HALF_NORM"
    QUARTER_SQUARED = "QUARTER_SQUARED"


class OperatorPair(BaseModel):
    """Operands A (m x m) and B (n x n) of A kron B, with m*n capped by kron_max_dim."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    a: np.ndarray
    b: np.ndarray

    @classmethod
    def build(cls, a, b) -> "OperatorPair":
        """
        Validate operands and construct the pair.

        Raises:
            MatrixParseError: if an operand is not a finite square matrix.
            SizeLimitError: if dim(a) * dim(b) exceeds kron_max_dim.
        """
        a, b = as_matrix(a), as_matrix(b)
        dim = a.shape[0] * b.shape[0]
        cap = get_setting("kron_max_dim")
        if dim > cap:
            raise SizeLimitError(f"Operator pair spans dimension {dim}, above the cap {cap}")
        return cls(a=a, b=b)

    @property
    def dims(self) -> Tuple[int, int]:
        return self.a.shape[0], self.b.shape[0]


class Term(BaseModel):
    name: str
    value: float


class BoundReport(BaseModel):
    """
    One inequality chain evaluated on an operator pair.

    The chain reads lower_terms, center, upper_terms from smallest to largest.
    holds is true when every adjacent step is non-decreasing within tol, and
    min_slack is the smallest signed step.
    """

    id: BoundId
    center_kind: str = CENTER_W
    center: float
    lower_terms: List[Term] = Field(default_factory=list)
    upper_terms: List[Term] = Field(default_factory=list)
    holds: bool = False
    min_slack: float = 0.0
    tol: float
    details: Dict[str, float] = Field(default_factory=dict)
    error: Optional[str] = None

    @property
    def chain(self) -> List[Term]:
        return [*self.lower_terms, Term(name="center", value=self.center), *self.upper_terms]

    def term(self, name: str) -> float:
        for t in self.chain:
            if t.name == name:
                return t.value
        raise KeyError(name)

    @property
    def slacks(self) -> List[float]:
        values = [t.value for t in self.chain]
        return [hi - lo for lo, hi in zip(values, values[1:])]

    def _w_scale(self, value: float) -> float:
        if self.center_kind == CENTER_W_SQUARED:
            return float(np.sqrt(max(value, 0.0)))
        return value

    @property
    def lower_gap(self) -> Optional[float]:
        """Distance from the bound's own lower term to the center, on the w-scale."""
        if self.error or self.center_kind == CENTER_GAP or not self.lower_terms:
            return None
        return self._w_scale(self.center) - self._w_scale(self.lower_terms[0].value)

    @property
    def upper_gap(self) -> Optional[float]:
        """Distance from the center to the bound's own upper term, on the w-scale."""
        if self.error or self.center_kind == CENTER_GAP or not self.upper_terms:
            return None
        return self._w_scale(self.upper_terms[0].value) - self._w_scale(self.center)

    @classmethod
    def from_chain(cls, bound_id: BoundId, center: float, lower: List[Tuple[str, float]],
                   upper: List[Tuple[str, float]], tol: float, center_kind: str = CENTER_W,
                   details: Optional[Dict[str, float]] = None) -> "BoundReport":
        report = cls(
            id=bound_id,
            center_kind=center_kind,
            center=float(center),
            lower_terms=[Term(name=n, value=float(v)) for n, v in lower],
            upper_terms=[Term(name=n, value=float(v)) for n, v in upper],
            tol=tol,
            details={k: float(v) for k, v in (details or {}).items()},
        )
        slacks = report.slacks
        report.min_slack = float(min(slacks)) if slacks else 0.0
        report.holds = all(s >= -tol for s in slacks)
        return report

    @classmethod
    def failed(cls, bound_id: BoundId, tol: float, error: str) -> "BoundReport":
        return cls(id=bound_id, center=float("nan"), tol=tol, holds=False,
                   min_slack=float("nan"), error=error)


class EqualityReport(BaseModel):
    """
    Grid proxy for an equality characterization "for all theta".

    Consistency at tol on the grid certifies the continuum statement at
    continuum_tolerance (tol plus the Lipschitz slack of one grid step).
    """

    kind: EqualityKind
    grid_size: int
    target: float
    max_deviation_plus: float
    max_deviation_minus: float
    consistent: bool
    tol: float
    continuum_tolerance: float


class RemarkReport(BaseModel):
    """
    One-directional checks of the rotated-norm remarks.

    A premise that holds must force the rotated norms to agree. Agreement
    without the premise is only flagged, never treated as a violation.
    """

    half_premise: bool
    quarter_premise: bool
    rotated_gap: float
    half_implication_holds: bool
    quarter_implication_holds: bool
    candidate_counterexample: bool
    tol: float


class BoundSummary(BaseModel):
    """Result of eval_all: reports in BoundId order plus the tightest bounds."""

    reports: List[BoundReport]
    tightest_lower: List[BoundId] = Field(default_factory=list)
    tightest_upper: List[BoundId] = Field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.reports)

    def get(self, bound_id) -> BoundReport:
        bound_id = BoundId.parse(bound_id)
        for r in self.reports:
            if r.id == bound_id:
                return r
        raise KeyError(bound_id)
