"""
ODE integrators shared by the vertical and Jacobi flows.

Fixed-step classical Runge-Kutta is the default: it is deterministic for a
given step and grid. The adaptive method wraps scipy's RK45.
"""

import logging
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..config import MIN_ADAPTIVE_STEP
from ..errors import StepRejected
from .models import IntegratorConfig

logger = logging.getLogger(__name__)

VectorField = Callable[[float, np.ndarray], np.ndarray]


def time_grid(t_max: float, step: float) -> np.ndarray:
    """
    Uniform grid on [0, t_max] whose last step is shortened to land on t_max.

    Args:
        t_max: Final time
        step: Nominal step

    Returns:
        Strictly increasing array starting at 0 and ending at t_max
    """
    n = int(np.ceil(t_max / step - 1e-9))
    n = max(n, 1)
    times = np.arange(n + 1, dtype=float) * step
    times[-1] = t_max
    return times


def rk4_step(f: VectorField, t: float, y: np.ndarray, h: float) -> np.ndarray:
    """One classical Runge-Kutta step of size h."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate_fixed(f: VectorField, y0: np.ndarray, times: np.ndarray) -> np.ndarray:
    """
    Integrate with rk4 on a given grid.

    Returns:
        (len(times), dim) array of states, row 0 equal to y0
    """
    y = np.array(y0, dtype=float)
    states = np.empty((len(times), y.size))
    states[0] = y
    for i in range(len(times) - 1):
        y = rk4_step(f, times[i], y, times[i + 1] - times[i])
        states[i + 1] = y
    return states


def integrate_adaptive(
    f: VectorField,
    y0: np.ndarray,
    t_max: float,
    rel_tol: float,
    abs_tol: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate with scipy's adaptive RK45.

    Returns:
        (times, states) at the steps accepted by the solver

    Raises:
        StepRejected: If the solver fails, typically because the step
            underflowed
    """
    sol = solve_ivp(
        f,
        (0.0, t_max),
        np.asarray(y0, dtype=float),
        method="RK45",
        rtol=rel_tol,
        atol=abs_tol,
    )
    if not sol.success:
        raise StepRejected(
            f"Adaptive integration stopped at t={sol.t[-1]}: {sol.message}",
            {"t": float(sol.t[-1]), "min_step": MIN_ADAPTIVE_STEP},
        )

    steps = np.diff(sol.t)
    if steps.size and np.min(steps) < MIN_ADAPTIVE_STEP:
        raise StepRejected(
            f"Adaptive step fell below {MIN_ADAPTIVE_STEP}",
            {"t": float(sol.t[np.argmin(steps)]), "min_step": MIN_ADAPTIVE_STEP},
        )

    logger.debug(f"RK45 finished with {sol.t.size} samples, {sol.nfev} evaluations")
    return sol.t, sol.y.T


def solve(f: VectorField, y0: np.ndarray, cfg: IntegratorConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate on [0, cfg.t_max] with the configured method.

    Returns:
        (times, states)
    """
    if cfg.method == "rk4":
        times = time_grid(cfg.t_max, cfg.step)
        return times, integrate_fixed(f, y0, times)
    return integrate_adaptive(f, y0, cfg.t_max, cfg.rel_tol, cfg.abs_tol)
