"""
Vertical Hamiltonian systems of left-invariant sub-Riemannian Engel structures.

With the Hamiltonian H = (h1^2 + h2^2)/2 the normal extremals satisfy a
Lie-Poisson system h' = K(u) h with u = (h1, h2, 0, 0). Abnormal extremals
(nu = 0, u1 = 0) follow the same linear system with u = (0, u2, 0, 0).
"""

import logging
from typing import Tuple

import numpy as np

from ..algebra.brackets import coadjoint_matrix, structure_constants_from_T
from ..algebra.models import EngelConstants
from .integrators import solve
from .models import IntegratorConfig, Trajectory, VerticalState, as_state_array

logger = logging.getLogger(__name__)


def normal_rhs(T: EngelConstants, h) -> VerticalState:
    """
    Time derivative of the normal vertical system.

    Args:
        T: Left-invariant invariants T1..T6
        h: Current covector coordinates

    Returns:
        VerticalState holding (h1', h2', h3', h4')
    """
    h1, h2, h3, h4 = as_state_array(h)
    c14_1 = 0.5 * T.t1 * T.t4
    return VerticalState(
        -h2 * h3,
        h1 * h3,
        h1 * h4 + h2 * (T.t6 * h1 + T.t4 * h2 + T.t2 * h3),
        h1 * (c14_1 * h1 + T.t5 * h2 + T.t3 * h3 + T.t1 * h4) + h2 * (T.t4 * h3 + T.t2 * h4),
    )


def abnormal_rhs(T: EngelConstants, h, u2: float) -> VerticalState:
    """Time derivative of the abnormal system (nu = 0, u1 = 0)."""
    h1, h2, h3, h4 = as_state_array(h)
    return VerticalState(
        -u2 * h3,
        0.0,
        u2 * (T.t6 * h1 + T.t4 * h2 + T.t2 * h3),
        u2 * (T.t4 * h3 + T.t2 * h4),
    )


def _normal_field(T: EngelConstants):
    """Vector field of the coupled (h, M) system with M' = -M K(u)."""
    table = structure_constants_from_T(T)

    def field(t: float, y: np.ndarray) -> np.ndarray:
        h = y[:4]
        transport = y[4:].reshape(4, 4)
        k = coadjoint_matrix(table, (h[0], h[1], 0.0, 0.0))
        return np.concatenate([k @ h, (-transport @ k).ravel()])

    return field


def integrate(T: EngelConstants, h0, cfg: IntegratorConfig) -> Trajectory:
    """
    Integrate the normal vertical system with its transport matrix.

    The transport starts at the identity and satisfies M' = -M K(u), where
    K(u) is the coadjoint matrix with h' = K(u) h. Then -M(t) h(t) is
    constant and equals the right-invariant momenta.

    Args:
        T: Left-invariant invariants (must satisfy the Jacobi restrictions)
        h0: Initial covector coordinates
        cfg: Integrator settings

    Returns:
        Trajectory on [0, cfg.t_max]

    Raises:
        JacobiViolated: If T is not a Lie algebra
        StepRejected: If the adaptive solver fails
    """
    y0 = np.concatenate([as_state_array(h0), np.eye(4).ravel()])
    times, states = solve(_normal_field(T), y0, cfg)

    logger.info(f"Integrated normal flow for {T.as_dict()} over [0, {cfg.t_max}] with {cfg.method} ({len(times)} samples)")
    return Trajectory(
        times=times,
        states=states[:, :4],
        transport=states[:, 4:].reshape(-1, 4, 4),
    )


def integrate_abnormal(T: EngelConstants, h0, cfg: IntegratorConfig, u2: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate the abnormal vertical system with constant control u2.

    Returns:
        (times, states) with states of shape (N, 4)
    """
    c2 = np.array(structure_constants_from_T(T).c[1])

    def field(t: float, h: np.ndarray) -> np.ndarray:
        return u2 * (c2 @ h)

    return solve(field, as_state_array(h0), cfg)
