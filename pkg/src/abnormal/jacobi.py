"""
Jacobi equation along abnormal geodesics and conjugate-time detection.

Along the unit-speed abnormal curve e^{tX2}, the pushed-forward field
A(t) = a1 X1 + a2 X2 + a3 X3 + a4 X4 satisfies A' = [A, X2]. A time t* > 0 is
conjugate iff a3(t*) = 0 for the solution starting at A(0) = X1. Only the
(a1, a3) subsystem is needed:

    a1' = -T6(t) a3
    a3' = a1 - T2(t) a3

and y = a3 exp(int T2/2) solves y'' + Delta(t) y = 0 with
Delta = T6 + T2'/2 - T2^2/4.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import bisect

from ..algebra.models import EngelConstants
from ..config import MIN_ADAPTIVE_STEP, ZERO_XTOL, resolve_tol
from ..errors import InvalidParams, StepRejected
from ..flow.integrators import integrate_fixed, rk4_step, solve, time_grid
from ..flow.models import IntegratorConfig
from .models import CoefficientProfile, JacobiState

logger = logging.getLogger(__name__)


def is_strict(T: EngelConstants, tol: Optional[float] = None) -> bool:
    """Abnormal geodesics are strictly abnormal iff T4 != 0."""
    return abs(T.t4) > resolve_tol(tol)


def is_strict_profile(p: CoefficientProfile, times, tol: Optional[float] = None) -> bool:
    """
    Strictness along a profile: |T4(t)| > tol at every sample time.

    Profiles without a T4 component are treated as not strict.
    """
    if not p.has_t4:
        return False
    tol = resolve_tol(tol)
    return all(abs(p.t4_at(t)) > tol for t in times)


def delta_const(T: EngelConstants) -> float:
    """Delta = T6 - T2^2/4 for a left-invariant structure."""
    return T.t6 - 0.25 * T.t2 ** 2


def delta_profile(p: CoefficientProfile, t: float) -> float:
    """
    Delta(t) = T6(t) + T2'(t)/2 - T2(t)^2/4.

    Raises:
        OutOfDomain: If t is outside [0, p.horizon]
    """
    t2 = p.t2_at(t)
    return p.t6_at(t) + 0.5 * p.t2_dot_at(t) - 0.25 * t2 ** 2


def conjugate_times_const(T: EngelConstants, horizon: float, tol: Optional[float] = None) -> List[float]:
    """
    Closed-form conjugate times pi k / sqrt(Delta) up to the horizon.

    Returns:
        Increasing list; empty when Delta <= tol
    """
    tol = resolve_tol(tol)
    delta = delta_const(T)
    if delta <= tol:
        return []
    first = np.pi / np.sqrt(delta)
    reach = horizon * (1 + tol)
    count = int(np.floor(reach / first))
    return [k * first for k in range(1, count + 1) if k * first <= reach]


def jacobi_flow(T: EngelConstants, A0, cfg: IntegratorConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate the full Jacobi system for a left-invariant structure.

        a1' = -T6 a3
        a2' = -T4 a3
        a3' = a1 - T2 a3 - T4 a4
        a4' = -T2 a4

    Args:
        T: Left-invariant invariants
        A0: Initial JacobiState or 4-sequence
        cfg: Integrator settings

    Returns:
        (times, states) with states of shape (N, 4)
    """
    a0 = A0.as_array() if isinstance(A0, JacobiState) else JacobiState.from_sequence(A0).as_array()
    matrix = np.array([
        [0.0, 0.0, -T.t6, 0.0],
        [0.0, 0.0, -T.t4, 0.0],
        [1.0, 0.0, -T.t2, -T.t4],
        [0.0, 0.0, 0.0, -T.t2],
    ])
    return solve(lambda t, a: matrix @ a, a0, cfg)


def _reduced_field(p: CoefficientProfile):
    def field(t: float, y: np.ndarray) -> np.ndarray:
        return np.array([-p.t6_at(t) * y[1], y[0] - p.t2_at(t) * y[1]])
    return field


def _check_horizon(p: CoefficientProfile, horizon: float) -> float:
    horizon = float(horizon)
    if not (np.isfinite(horizon) and horizon > 0):
        raise InvalidParams(f"Horizon must be positive, got {horizon}")
    p.check_time(horizon)
    return min(horizon, p.horizon)


def _warn_if_tangential(t_star: float, a1: float, scale: float, tol: float) -> None:
    if abs(a1) <= tol * (1 + scale):
        logger.warning(f"Possible tangential zero of a3 at t={t_star}: a1={a1}")


def conjugate_shoot(p: CoefficientProfile, horizon: float, cfg: IntegratorConfig, tol: Optional[float] = None) -> List[float]:
    """
    Conjugate times on (0, horizon] by shooting from (a1, a3) = (1, 0).

    Sign changes of a3 are bracketed on the integration grid and refined by
    bisection to ZERO_XTOL. The horizon itself counts when a3 is within
    ZERO_XTOL of a zero there. Zeros where a3 touches 0 without changing sign
    are not detected; they require a1 = 0 there, which is logged.

    Args:
        p: Coefficient profile
        horizon: End of the search interval
        cfg: Integrator settings (method and step)
        tol: Threshold for the tangential-zero warning

    Returns:
        Increasing list of conjugate times

    Raises:
        InvalidParams: If horizon is not positive
        OutOfDomain: If horizon exceeds the profile domain
        StepRejected: If the adaptive solver fails
    """
    tol = resolve_tol(tol)
    horizon = _check_horizon(p, horizon)
    field = _reduced_field(p)
    y0 = np.array([1.0, 0.0])

    if cfg.method == "rk4":
        times = time_grid(horizon, cfg.step)
        states = integrate_fixed(field, y0, times)

        def state_from(i):
            return lambda t: rk4_step(field, times[i], states[i], t - times[i])
    else:
        sol = solve_ivp(field, (0.0, horizon), y0, method="RK45",
                        rtol=cfg.rel_tol, atol=cfg.abs_tol, dense_output=True)
        if not sol.success:
            raise StepRejected(
                f"Adaptive shooting stopped at t={sol.t[-1]}: {sol.message}",
                {"t": float(sol.t[-1]), "min_step": MIN_ADAPTIVE_STEP},
            )
        times, states = sol.t, sol.y.T

        def state_from(i):
            return sol.sol

    a3 = states[:, 1]
    scale = float(np.max(np.abs(states[:, 0])))
    zeros = []
    for i in range(len(times) - 1):
        if a3[i + 1] == 0.0:
            t_star = float(times[i + 1])
            a1 = float(states[i + 1, 0])
        elif a3[i] * a3[i + 1] < 0:
            state = state_from(i)
            t_star = float(bisect(lambda t: state(t)[1], times[i], times[i + 1], xtol=ZERO_XTOL))
            a1 = float(state(t_star)[0])
        else:
            continue
        zeros.append(t_star)
        _warn_if_tangential(t_star, a1, scale, tol)

    # the interval is closed at the horizon, where a3 may sit on either side of 0
    slope = float(field(horizon, states[-1])[1])
    last_zero = zeros[-1] if zeros else -np.inf
    if abs(a3[-1]) <= ZERO_XTOL * abs(slope) and horizon - last_zero > ZERO_XTOL:
        zeros.append(horizon)

    logger.info(f"Shooting on [0, {horizon}] found {len(zeros)} conjugate time(s)")
    return zeros


def sturm_residual(p: CoefficientProfile, horizon: float, cfg: IntegratorConfig) -> float:
    """
    Check that y = a3 exp(int T2/2) solves y'' + Delta y = 0.

    Integrates (a1, a3, s) with s' = T2/2 by rk4 on a uniform grid and
    evaluates the equation with second differences at interior points.

    Returns:
        Max absolute residual over the interior grid points
    """
    horizon = _check_horizon(p, horizon)
    n = max(int(np.ceil(horizon / cfg.step - 1e-9)), 2)
    times = np.linspace(0.0, horizon, n + 1)
    h = times[1] - times[0]

    reduced = _reduced_field(p)

    def field(t: float, y: np.ndarray) -> np.ndarray:
        return np.append(reduced(t, y[:2]), 0.5 * p.t2_at(t))

    states = integrate_fixed(field, np.array([1.0, 0.0, 0.0]), times)
    y = states[:, 1] * np.exp(states[:, 2])

    second = (y[2:] - 2 * y[1:-1] + y[:-2]) / h ** 2
    delta = np.array([delta_profile(p, t) for t in times[1:-1]])
    residual = float(np.max(np.abs(second + delta * y[1:-1])))
    logger.debug(f"Sturm residual on [0, {horizon}] with {n} steps: {residual}")
    return residual
