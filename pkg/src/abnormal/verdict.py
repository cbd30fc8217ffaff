"""
Minimality verdicts for abnormal geodesics on [0, tau].
"""

import logging
from typing import Optional, Union

import numpy as np

from ..algebra.models import EngelConstants
from ..config import resolve_tol
from ..errors import InvalidParams
from ..flow.integrators import time_grid
from ..flow.models import IntegratorConfig
from .jacobi import (
    conjugate_shoot,
    conjugate_times_const,
    delta_const,
    delta_profile,
    is_strict,
    is_strict_profile,
)
from .models import CoefficientProfile, MinimalityVerdict

logger = logging.getLogger(__name__)

BASIS_NONPOSITIVE_DELTA = "nonpositive_delta"
BASIS_NON_STRICT = "non_strict_abnormal"
BASIS_CONJUGATE_BEFORE_TAU = "conjugate_point_before_tau"
BASIS_NO_CONJUGATE_BEFORE_TAU = "no_conjugate_point_before_tau"
BASIS_DELTA_LOWER_BOUND = "delta_lower_bound"
BASIS_SHOOTING_CONJUGATE = "conjugate_point_shooting"
BASIS_SHOOTING_NONE = "no_conjugate_point_shooting"


def _constant_verdict(T: EngelConstants, tau: float, tol: float) -> MinimalityVerdict:
    delta = delta_const(T)
    if delta <= tol:
        return MinimalityVerdict("minimizer", None, BASIS_NONPOSITIVE_DELTA)

    first = float(np.pi / np.sqrt(delta))
    times = tuple(conjugate_times_const(T, tau, tol))
    if not is_strict(T, tol):
        return MinimalityVerdict("inconclusive", first, BASIS_NON_STRICT, times)
    if tau >= first * (1 - tol):
        return MinimalityVerdict("not_minimizer", first, BASIS_CONJUGATE_BEFORE_TAU, times)
    return MinimalityVerdict("minimizer", first, BASIS_NO_CONJUGATE_BEFORE_TAU, times)


def _profile_verdict(p: CoefficientProfile, tau: float, cfg: IntegratorConfig, tol: float) -> MinimalityVerdict:
    grid = time_grid(tau, cfg.step)
    deltas = np.array([delta_profile(p, t) for t in grid])
    if np.max(deltas) <= tol:
        return MinimalityVerdict("minimizer", None, BASIS_NONPOSITIVE_DELTA)

    strict = is_strict_profile(p, grid, tol)
    zeros = tuple(conjugate_shoot(p, tau, cfg, tol))
    first = zeros[0] if zeros else None

    lower = float(np.min(deltas))
    bound = float(np.pi / np.sqrt(lower)) if lower > tol else np.inf
    if strict and tau >= bound * (1 - tol):
        return MinimalityVerdict("not_minimizer", first if first is not None else bound, BASIS_DELTA_LOWER_BOUND, zeros)

    if not strict:
        return MinimalityVerdict("inconclusive", first, BASIS_NON_STRICT, zeros)
    if zeros:
        return MinimalityVerdict("not_minimizer", first, BASIS_SHOOTING_CONJUGATE, zeros)
    return MinimalityVerdict("minimizer", None, BASIS_SHOOTING_NONE, zeros)


def minimality_verdict(
    subject: Union[EngelConstants, CoefficientProfile],
    tau: float,
    cfg: Optional[IntegratorConfig] = None,
    tol: Optional[float] = None,
) -> MinimalityVerdict:
    """
    Decide C0-local minimality of the abnormal geodesic on [0, tau].

    For constant invariants the closed-form conjugate times decide. For a
    profile, Delta <= 0 everywhere gives a minimizer and a positive lower
    bound C with tau >= pi/sqrt(C) a non-minimizer when strict; otherwise
    the shooting result decides for strict curves and the verdict is
    inconclusive for non-strict ones.

    Args:
        subject: EngelConstants or CoefficientProfile
        tau: Length of the geodesic segment
        cfg: Integrator settings for the profile case (default IntegratorConfig)
        tol: Zero threshold (default: global tol_alg)

    Returns:
        MinimalityVerdict

    Raises:
        InvalidParams: If tau is not positive or the subject has the wrong type
        OutOfDomain: If tau exceeds the profile domain
    """
    tau = float(tau)
    if not (np.isfinite(tau) and tau > 0):
        raise InvalidParams(f"tau must be positive, got {tau}")
    tol = resolve_tol(tol)

    if isinstance(subject, EngelConstants):
        verdict = _constant_verdict(subject, tau, tol)
    elif isinstance(subject, CoefficientProfile):
        subject.check_time(tau)
        cfg = (cfg or IntegratorConfig()).with_t_max(tau)
        verdict = _profile_verdict(subject, tau, cfg, tol)
    else:
        raise InvalidParams(f"Expected EngelConstants or CoefficientProfile, got {type(subject).__name__}")

    logger.info(f"Verdict on [0, {tau}]: {verdict.verdict} ({verdict.basis})")
    return verdict
