from .commands import (
    EXIT_FAILED,
    EXIT_IO,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    cmd_bounds,
    cmd_crawford,
    cmd_dist,
    cmd_equality,
    cmd_radius,
    cmd_range,
    exit_code_for,
)
from .verify import TrialRecord, VerifyConfig, cmd_verify, run_trial, run_trials, summarize

__all__ = [
    "EXIT_FAILED",
    "EXIT_IO",
    "EXIT_NUMERICAL",
    "EXIT_OK",
    "EXIT_USAGE",
    "cmd_bounds",
    "cmd_crawford",
    "cmd_dist",
    "cmd_equality",
    "cmd_radius",
    "cmd_range",
    "exit_code_for",
    "TrialRecord",
    "VerifyConfig",
    "cmd_verify",
    "run_trial",
    "run_trials",
    "summarize",
]
