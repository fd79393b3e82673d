"""
Command implementations. Each returns a process exit code:

    0 success, 1 a bound or equality fails, 2 parse/usage error,
    3 numerical failure, 4 I/O error.
"""

import functools
import logging
import sys
from typing import Callable, Optional

import numpy as np

from bounds import OperatorPair, check_equality_half, check_equality_quarter, eval_all
from linalg import BudgetExceededError, NoConvergenceError, NumericalRadiusError, load_matrix
from numrange import boundary_frame, crawford_number, numerical_radius, range_boundary, write_boundary_csv
from scalar_distance import distance_to_scalars
from .reports import BOUNDS_FORMAT, FLOAT_FORMAT, bound_rows, dumps, fmt, fmt_complex, fmt_vector, summary_to_dict, write_csv, write_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, OSError):
        return EXIT_IO
    if isinstance(exc, (NoConvergenceError, BudgetExceededError, np.linalg.LinAlgError, ArithmeticError)):
        return EXIT_NUMERICAL
    if isinstance(exc, ValueError):
        return EXIT_USAGE
    if isinstance(exc, NumericalRadiusError):
        return EXIT_NUMERICAL
    raise exc


def handle_errors(func: Callable[..., int]) -> Callable[..., int]:
    """Map toolkit errors to exit codes with a message on standard error."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except (OSError, ValueError, ArithmeticError, NumericalRadiusError, np.linalg.LinAlgError) as e:
            code = exit_code_for(e)
            logger.error(f"{func.__name__} failed ({type(e).__name__}): {e}", exc_info=code == EXIT_NUMERICAL)
            print(f"error: {e}", file=sys.stderr)
            return code

    return wrapper


@handle_errors
def cmd_radius(path: str, tol: Optional[float] = None) -> int:
    result = numerical_radius(load_matrix(path), tol)
    print(fmt(result.value))
    print(f"theta_star={fmt(result.theta_star)}")
    print(f"certificate={fmt_vector(result.certificate)}")
    print(f"evaluations={result.evaluations}")
    return EXIT_OK


@handle_errors
def cmd_crawford(path: str, tol: Optional[float] = None) -> int:
    result = crawford_number(load_matrix(path), tol)
    print(fmt(result.value))
    print(f"theta_star={fmt(result.theta_star)}")
    print(f"attained_inside={str(result.attained_inside).lower()}")
    return EXIT_OK


@handle_errors
def cmd_dist(path: str, tol: Optional[float] = None) -> int:
    result = distance_to_scalars(load_matrix(path), tol)
    print(f"{fmt(result.value)} at lambda={fmt_complex(result.lambda_star)}")
    print(f"iterations={result.iterations}")
    print(f"box_radius={fmt(result.box_radius)}")
    return EXIT_OK


def _load_pair(path_a: str, path_b: str) -> OperatorPair:
    return OperatorPair.build(load_matrix(path_a), load_matrix(path_b))


@handle_errors
def cmd_bounds(path_a: str, path_b: str, tol: Optional[float] = None,
               fmt_name: str = "json", out: Optional[str] = None) -> int:
    pair = _load_pair(path_a, path_b)
    summary = eval_all(pair, tol)
    if fmt_name == "csv":
        write_csv(bound_rows(summary.reports), out or sys.stdout, BOUNDS_FORMAT)
    else:
        write_text(dumps(summary_to_dict(summary)), out, sys.stdout)
    violated = [r.id.value for r in summary.reports if r.error is None and not r.holds]
    errored = [r.id.value for r in summary.reports if r.error is not None]
    if violated:
        logger.error(f"BOUND VIOLATION on {pair.dims} pair: {violated}")
        print(f"bound violation: {', '.join(violated)}", file=sys.stderr)
        return EXIT_FAILED
    if errored:
        logger.error(f"Numerical failure evaluating {errored} on {pair.dims} pair")
        print(f"numerical failure: {', '.join(errored)}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


@handle_errors
def cmd_range(path: str, points: Optional[int] = None, out: Optional[str] = None) -> int:
    samples = range_boundary(load_matrix(path), points)
    if out is None:
        boundary_frame(samples).to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    else:
        write_boundary_csv(samples, out)
    return EXIT_OK


@handle_errors
def cmd_equality(path_a: str, path_b: str, which: str = "half", grid: Optional[int] = None,
                 tol: Optional[float] = None) -> int:
    if which not in ("half", "quarter"):
        raise ValueError(f"Unknown equality check: {which}. Supported: ['half', 'quarter']")
    pair = _load_pair(path_a, path_b)
    check = check_equality_half if which == "half" else check_equality_quarter
    report = check(pair, grid, tol)
    print(dumps(report.model_dump(mode="json")))
    return EXIT_OK if report.consistent else EXIT_FAILED
