"""
Text, JSON and CSV rendering for command output and verify reports.

Every number is written with 12 significant digits and a '.' decimal point.
CSV reports open with a comment line carrying the format version.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, TextIO, Union

import numpy as np
import pandas as pd

from bounds import BoundReport, BoundSummary

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"
BOUNDS_FORMAT = "bounds-report/1"
VERIFY_FORMAT = "verify-report/1"
VERIFY_COLUMNS = ["trial", "ensemble_a", "ensemble_b", "dim_a", "dim_b", "bound_id", "center", "min_slack", "holds"]


def fmt(x: float) -> str:
    return FLOAT_FORMAT % x


def fmt_complex(z: complex) -> str:
    z = complex(z)
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}i"


def fmt_vector(v: Iterable[complex]) -> str:
    return "[" + ", ".join(fmt_complex(z) for z in v) + "]"


def round_floats(obj: Any) -> Any:
    """Round every float to 12 significant digits; non-finite floats become None."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(fmt(obj))
    if isinstance(obj, np.generic):
        return round_floats(obj.item())
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(round_floats(obj), indent=2)


def report_to_dict(report: BoundReport) -> Dict[str, Any]:
    doc = report.model_dump(mode="json")
    doc["chain"] = [t.model_dump() for t in report.chain]
    doc["slacks"] = report.slacks
    return doc


def summary_to_dict(summary: BoundSummary) -> Dict[str, Any]:
    """JSON mirror of eval_all keyed by the stable BoundId names."""
    return {
        "format": BOUNDS_FORMAT,
        "all_hold": summary.all_hold,
        "tightest_lower": [b.value for b in summary.tightest_lower],
        "tightest_upper": [b.value for b in summary.tightest_upper],
        "bounds": {r.id.value: report_to_dict(r) for r in summary.reports},
    }


def bound_rows(reports: List[BoundReport]) -> pd.DataFrame:
    """One row per report: id, center, flattened chain terms, holds, min_slack."""
    rows = []
    for r in reports:
        row: Dict[str, Any] = {"bound_id": r.id.value, "center": r.center}
        for side, terms in (("lower", r.lower_terms), ("upper", r.upper_terms)):
            for k, term in enumerate(terms):
                row[f"{side}_{k}_name"] = term.name
                row[f"{side}_{k}_value"] = term.value
        row["holds"] = r.holds
        row["min_slack"] = r.min_slack
        row["error"] = r.error or ""
        rows.append(row)
    frame = pd.DataFrame(rows)
    leading = ["bound_id", "center"]
    trailing = ["holds", "min_slack", "error"]
    middle = sorted(c for c in frame.columns if c not in leading + trailing)
    return frame[leading + middle + trailing]


def write_csv(frame: pd.DataFrame, target: Union[str, Path, TextIO], version: str):
    """Write a versioned CSV to a path or an open text stream."""
    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as f:
            write_csv(frame, f, version)
        logger.info(f"Wrote {len(frame)} rows to {target}")
        return
    target.write(f"# format={version}\n")
    frame.to_csv(target, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_text(text: str, target: Optional[Union[str, Path]], stream: TextIO):
    if target is None:
        stream.write(text if text.endswith("\n") else text + "\n")
        return
    with open(target, "w") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    logger.info(f"Wrote {target}")
