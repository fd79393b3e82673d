# config.py
import os
import sys
import logging
from pathlib import Path
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Load environment variables
load_dotenv(override=True)

project_root = Path(__file__).resolve().parent

LOG_FORMAT = '%(asctime)s - %(levelname)s - [%(name)s] - %(message)s'

# Default configuration dictionary with sensible defaults
DEFAULT_CONFIG = {
    # Tolerances
    "radius_tol": float(os.environ.get("NR_RADIUS_TOL", "1e-9")),
    "bound_tol": float(os.environ.get("NR_BOUND_TOL", "1e-7")),

    # Core linear algebra
    "kron_max_dim": int(os.environ.get("NR_KRON_MAX_DIM", "4096")),
    "jacobi_max_sweeps": int(os.environ.get("NR_JACOBI_MAX_SWEEPS", "100")),
    "eig_method": os.environ.get("NR_EIG_METHOD", "lapack"),  # "lapack" or "jacobi"

    # Numerical range sweeps
    "radius_grid_min": 64,
    "radius_grid_max": 2048,
    "support_grid": 8192,
    "boundary_points": 720,

    # Scalar-shift searches
    "dist_grid": 33,
    "dist_budget": 500,
    "gap_grid": 17,

    # Equality characterizations
    "equality_grid": 360,

    # Harness
    "verify_workers": int(os.environ.get("NR_VERIFY_WORKERS", "1")),
    "log_level": os.environ.get("NR_LOG_LEVEL", "INFO"),
    "log_dir": os.environ.get("NR_LOG_DIR", str(project_root / "logs")),
}

# --- Configuration Loading ---
# The toolkit uses a layered configuration approach:
# 1. Default values are defined in DEFAULT_CONFIG above.
# 2. Some defaults can be set via environment variables (or a .env file).
# 3. Command-line flags override both through update_app_config().
# 4. The final configuration is stored in the global app_config dictionary.

app_config = DEFAULT_CONFIG.copy()

# (key, type, lower, upper) clamping rules for update_app_config
_NUMERIC_RULES = [
    ("radius_tol", float, 1e-15, 1e-2),
    ("bound_tol", float, 1e-15, 1e-2),
    ("kron_max_dim", int, 1, 1 << 16),
    ("jacobi_max_sweeps", int, 1, 10000),
    ("radius_grid_min", int, 8, 1 << 16),
    ("radius_grid_max", int, 8, 1 << 20),
    ("support_grid", int, 64, 1 << 20),
    ("boundary_points", int, 3, 1 << 20),
    ("dist_grid", int, 3, 1025),
    ("dist_budget", int, 10, 100000),
    ("gap_grid", int, 9, 1025),
    ("equality_grid", int, 4, 1 << 20),
    ("verify_workers", int, 1, 256),
]

EIG_METHODS = ("lapack", "jacobi")


def get_setting(key):
    """Return the active value for a configuration key, falling back to the default."""
    return app_config.get(key, DEFAULT_CONFIG[key])


def update_app_config(new_config):
    """
    Updates the app_config dictionary with new values, applying validation rules.

    Args:
        new_config: Dictionary containing new configuration values

    Returns:
        (success, message) tuple
    """
    try:
        updated_config = app_config.copy()

        for key, cast, lower, upper in _NUMERIC_RULES:
            if key in new_config and new_config[key] is not None:
                updated_config[key] = max(lower, min(upper, cast(new_config[key])))

        if "eig_method" in new_config and new_config["eig_method"] is not None:
            method = str(new_config["eig_method"]).lower()
            if method not in EIG_METHODS:
                return False, f"Unsupported eig_method: {method}. Supported: {list(EIG_METHODS)}"
            updated_config["eig_method"] = method

        for key in ["log_level", "log_dir"]:
            if key in new_config and new_config[key] is not None:
                updated_config[key] = str(new_config[key])

        app_config.update(updated_config)
        logger.debug(f"Configuration updated: {app_config}")
        return True, "Configuration updated successfully"

    except (TypeError, ValueError) as e:
        logger.error(f"Invalid value type during config update: {e}")
        return False, f"Invalid value type provided: {e}"


def reset_app_config():
    """Restore every key to its default value."""
    app_config.clear()
    app_config.update(DEFAULT_CONFIG)


def configure_logging(level=None, log_file=None):
    """
    Configure root logging for command-line runs.

    Args:
        level: Log level name; defaults to the configured log_level.
        log_file: Optional file name created under log_dir (overwritten each run).
    """
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        log_dir = Path(get_setting("log_dir"))
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(log_dir / log_file, mode='w'))

    logging.basicConfig(
        level=getattr(logging, str(level or get_setting("log_level")).upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True
    )
