"""
Randomized verification harness.

Each trial draws an operator pair from (master_seed, trial_index) alone, runs
every bound, and checks the equality cases its ensembles fall under. Trials
may run on a process pool; records are collected in trial order, so reports
do not depend on the worker count.
"""

import logging
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Literal, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator
from tqdm import tqdm

from config import app_config, get_setting, update_app_config
from bounds import (
    BoundId,
    BoundReport,
    EqualityReport,
    OperatorPair,
    PairContext,
    RemarkReport,
    check_corollary,
    check_double_radius_remark,
    check_equality_half,
    check_equality_quarter,
    check_rotated_remarks,
    default_tol,
    eval_all,
)
from generators import Ensemble, EnsembleSpec, GeneratorConfig, generate, split_stream, trial_seeds
from linalg import error_code
from .reports import VERIFY_COLUMNS, VERIFY_FORMAT, dumps, write_csv

logger = logging.getLogger(__name__)

NORMAL_CLASSES = {Ensemble.NORMAL, Ensemble.SELFADJOINT, Ensemble.UNITARY}
ERROR_RATE_LIMIT = 0.01


class VerifyConfig(BaseModel):
    trials: int = Field(ge=1)
    dims: List[int] = Field(default_factory=lambda: [2, 3])
    ensembles: List[Tuple[str, str]] = Field(default_factory=lambda: [("GINIBRE", "GINIBRE")])
    master_seed: int = Field(default=42, ge=0, le=(1 << 64) - 1)
    tol: Optional[float] = Field(default=None, gt=0)
    out_path: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    workers: int = Field(default=1, ge=1)
    quiet: bool = False

    @field_validator("ensembles")
    @classmethod
    def _normalize_ensembles(cls, pairs):
        if not pairs:
            raise ValueError("At least one ensemble pair is required")
        return [(EnsembleSpec.parse(a).name, EnsembleSpec.parse(b).name) for a, b in pairs]

    @model_validator(mode="after")
    def _check_dims(self):
        if not self.dims:
            raise ValueError("At least one dimension is required")
        if min(self.dims) < 1:
            raise ValueError(f"Dimensions must be positive, got {self.dims}")
        cap = get_setting("kron_max_dim")
        if max(self.dims) ** 2 > cap:
            raise ValueError(f"Dimension {max(self.dims)} squared exceeds the Kronecker cap {cap}")
        return self


class TrialRecord(BaseModel):
    trial: int
    ensemble_a: str
    ensemble_b: str
    dim_a: int
    dim_b: int
    seed_a: int
    seed_b: int
    reports: List[BoundReport] = Field(default_factory=list)
    tightest_lower: List[BoundId] = Field(default_factory=list)
    tightest_upper: List[BoundId] = Field(default_factory=list)
    equality: List[EqualityReport] = Field(default_factory=list)
    equality_cases: Dict[str, float] = Field(default_factory=dict)
    remarks: Optional[RemarkReport] = None
    corollary_holds: Optional[bool] = None
    double_radius_remark_holds: Optional[bool] = None
    error: Optional[str] = None
    wall_time: float = 0.0

    @property
    def violations(self) -> List[BoundReport]:
        return [r for r in self.reports if not r.holds and r.error is None]

    @property
    def errored(self) -> bool:
        return self.error is not None or any(r.error for r in self.reports)

    def diffable(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude={"wall_time"})


def trial_plan(cfg: VerifyConfig, index: int) -> Tuple[str, str, int, int, int, int]:
    """Ensemble names, dims and seeds of one trial, derived from (master_seed, index)."""
    ens_a, ens_b = cfg.ensembles[index % len(cfg.ensembles)]
    trial_seed = split_stream(cfg.master_seed, index)
    dim_a = cfg.dims[split_stream(trial_seed, 2) % len(cfg.dims)]
    dim_b = cfg.dims[split_stream(trial_seed, 3) % len(cfg.dims)]
    seed_a, seed_b = trial_seeds(cfg.master_seed, index)
    return ens_a, ens_b, dim_a, dim_b, seed_a, seed_b


def _relative(value: float, predicted: float) -> float:
    return abs(value - predicted) / predicted if predicted > 0 else abs(value - predicted)


def equality_cases(spec_a: EnsembleSpec, spec_b: EnsembleSpec, ctx: PairContext) -> Dict[str, float]:
    """Relative deviation of w(A kron B) from each equality case the ensembles satisfy."""
    cases = {}
    zero_a, zero_b = spec_a.base == Ensemble.SQUARE_ZERO, spec_b.base == Ensemble.SQUARE_ZERO
    normal_a, normal_b = spec_a.base in NORMAL_CLASSES, spec_b.base in NORMAL_CLASSES
    if (zero_a and normal_b) or (zero_b and normal_a):
        cases["half_norm_product"] = _relative(ctx.w_t, 0.5 * ctx.norm_product)
    if normal_a and normal_b:
        cases["norm_product"] = _relative(ctx.w_t, ctx.norm_product)
    if normal_a or normal_b:
        cases["radius_product"] = _relative(ctx.w_t, ctx.w_a * ctx.w_b)
    if zero_a and zero_b:
        cases["double_radius_product"] = _relative(ctx.w_t, 2.0 * ctx.w_a * ctx.w_b)
    return cases


def run_trial(cfg: VerifyConfig, index: int, settings: Optional[Dict[str, Any]] = None) -> TrialRecord:
    """Draw and evaluate one trial; failures are recorded, never raised."""
    if settings:
        update_app_config(settings)
    start = time.perf_counter()
    ens_a, ens_b, dim_a, dim_b, seed_a, seed_b = trial_plan(cfg, index)
    record = TrialRecord(trial=index, ensemble_a=ens_a, ensemble_b=ens_b,
                         dim_a=dim_a, dim_b=dim_b, seed_a=seed_a, seed_b=seed_b)
    try:
        spec_a, spec_b = EnsembleSpec.parse(ens_a), EnsembleSpec.parse(ens_b)
        pair = OperatorPair.build(generate(spec_a, GeneratorConfig(seed_a, dim_a)),
                                  generate(spec_b, GeneratorConfig(seed_b, dim_b)))
        tol = cfg.tol or default_tol(pair)
        ctx = PairContext(pair)
        summary = eval_all(pair, tol, context=ctx)
        record.reports = summary.reports
        record.tightest_lower = summary.tightest_lower
        record.tightest_upper = summary.tightest_upper

        record.equality_cases = equality_cases(spec_a, spec_b, ctx)
        if "half_norm_product" in record.equality_cases:
            record.equality = [check_equality_half(pair, tol=tol, context=ctx),
                               check_equality_quarter(pair, tol=tol, context=ctx)]
        record.remarks = check_rotated_remarks(pair, tol, context=ctx)
        record.corollary_holds = check_corollary(pair, tol, context=ctx)
        record.double_radius_remark_holds = check_double_radius_remark(pair, tol, context=ctx)
    except Exception as e:
        logger.error(f"Trial {index} ({ens_a}:{ens_b}, dims {dim_a}x{dim_b}) failed: {e}", exc_info=True)
        record.error = error_code(e)
    record.wall_time = time.perf_counter() - start
    return record


def run_trials(cfg: VerifyConfig) -> List[TrialRecord]:
    """All trials in index order, serially or on a process pool."""
    indices = range(cfg.trials)
    disable = cfg.quiet or not sys.stderr.isatty()
    if cfg.workers <= 1:
        return [run_trial(cfg, i) for i in tqdm(indices, desc="Verifying", disable=disable)]
    settings = dict(app_config)
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        results = pool.map(run_trial, [cfg] * cfg.trials, indices, [settings] * cfg.trials,
                           chunksize=max(1, cfg.trials // (4 * cfg.workers)))
        return list(tqdm(results, total=cfg.trials, desc="Verifying", disable=disable))


def summarize(records: List[TrialRecord]) -> Dict[str, Any]:
    """Violation and error counts, tightness frequencies and equality-case deviations."""
    tight_lower, tight_upper = Counter(), Counter()
    min_slack: Dict[str, float] = {}
    worst_case: Dict[str, float] = {}
    for rec in records:
        tight_lower.update(b.value for b in rec.tightest_lower)
        tight_upper.update(b.value for b in rec.tightest_upper)
        for r in rec.reports:
            if r.error is None:
                min_slack[r.id.value] = min(min_slack.get(r.id.value, r.min_slack), r.min_slack)
        for name, dev in rec.equality_cases.items():
            worst_case[name] = max(worst_case.get(name, 0.0), dev)

    return {
        "trials": len(records),
        "bound_reports": sum(len(r.reports) for r in records),
        "violations": sum(len(r.violations) for r in records),
        "errored_trials": sum(1 for r in records if r.errored),
        "candidate_counterexamples": sum(1 for r in records if r.remarks and r.remarks.candidate_counterexample),
        "tightest_lower_counts": {b.value: tight_lower.get(b.value, 0) for b in BoundId},
        "tightest_upper_counts": {b.value: tight_upper.get(b.value, 0) for b in BoundId},
        "min_slack": {b.value: min_slack[b.value] for b in BoundId if b.value in min_slack},
        "equality_case_max_deviation": dict(sorted(worst_case.items())),
    }


def verify_frame(records: List[TrialRecord]) -> pd.DataFrame:
    rows = [
        [rec.trial, rec.ensemble_a, rec.ensemble_b, rec.dim_a, rec.dim_b,
         r.id.value, r.center, r.min_slack, r.holds]
        for rec in records for r in rec.reports
    ]
    return pd.DataFrame(rows, columns=VERIFY_COLUMNS)


def verify_document(cfg: VerifyConfig, records: List[TrialRecord], summary: Dict[str, Any]) -> Dict[str, Any]:
    """JSON report: the diffable section first, wall times kept apart."""
    return {
        "format": VERIFY_FORMAT,
        "diffable": {
            "config": cfg.model_dump(mode="json", exclude={"out_path", "workers", "quiet"}),
            "records": [rec.diffable() for rec in records],
            "summary": summary,
        },
        "timing": {"wall_time": [rec.wall_time for rec in records]},
    }


def write_report(cfg: VerifyConfig, records: List[TrialRecord], summary: Dict[str, Any]):
    if cfg.format == "csv":
        write_csv(verify_frame(records), cfg.out_path, VERIFY_FORMAT)
        return
    with open(cfg.out_path, "w") as f:
        f.write(dumps(verify_document(cfg, records, summary)) + "\n")
    logger.info(f"Wrote {len(records)} trial records to {cfg.out_path}")


def exit_status(summary: Dict[str, Any]) -> int:
    """1 on any violation, else 3 when more than 1% of trials errored, else 0."""
    if summary["violations"]:
        return 1
    if summary["errored_trials"] > ERROR_RATE_LIMIT * summary["trials"]:
        return 3
    return 0


def cmd_verify(cfg: VerifyConfig) -> int:
    logger.info(f"Starting verification: {cfg.trials} trials, dims {cfg.dims}, "
                f"ensembles {cfg.ensembles}, seed {cfg.master_seed}, workers {cfg.workers}")
    records = run_trials(cfg)
    summary = summarize(records)
    if cfg.out_path:
        write_report(cfg, records, summary)

    status = exit_status(summary)
    if summary["violations"]:
        logger.error(f"{summary['violations']} bound violations found; see the report for the offending trials")
    logger.info(f"Verification finished: {summary['trials']} trials, {summary['bound_reports']} bound reports, "
                f"{summary['violations']} violations, {summary['errored_trials']} errored trials")
    print(dumps(summary))
    return status
