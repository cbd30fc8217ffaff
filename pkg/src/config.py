"""
Runtime configuration.

The global tolerance ``tol_alg`` can be overridden with the ``ENGEL_TOL``
environment variable (a ``.env`` file is honoured by the CLI, which calls
``load_dotenv``). The value is read on every call so that changes made after
import take effect.
"""

import logging
import os
from typing import Optional

from .errors import InvalidConfig

logger = logging.getLogger(__name__)

TOL_ENV_VAR = "ENGEL_TOL"
DEFAULT_TOL = 1e-9

# Integrator defaults
DEFAULT_METHOD = "rk4"
DEFAULT_STEP = 1e-3
DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12
MIN_ADAPTIVE_STEP = 1e-12

# Bisection tolerance for conjugate-time refinement
ZERO_XTOL = 1e-10


def tol_alg() -> float:
    """
    Return the global algebraic tolerance.

    Returns:
        ``ENGEL_TOL`` if set, otherwise 1e-9

    Raises:
        InvalidConfig: If ``ENGEL_TOL`` is not a positive number
    """
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL

    try:
        value = float(raw)
    except ValueError:
        raise InvalidConfig(f"{TOL_ENV_VAR} must be a number, got {raw!r}")

    if not value > 0:
        raise InvalidConfig(f"{TOL_ENV_VAR} must be positive, got {value}")

    return value


def resolve_tol(tol: Optional[float]) -> float:
    """Use an explicit tolerance if given, else the global one."""
    return tol_alg() if tol is None else float(tol)
