"""
First integrals of the normal vertical flow.

Every structure conserves H and the right-invariant momenta. Type-III
structures additionally conserve the center momentum h4' and the quartic
integral G, which makes them super-integrable. Some family-I structures carry
polynomial integrals F1, F2 of higher order.
"""

import logging
from typing import Dict, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..algebra.models import EngelConstants
from ..classify.families import is_type3, require_type3
from ..errors import InvalidParams
from .models import Trajectory, as_state_array

logger = logging.getLogger(__name__)

# Columns of the independence matrix whose minor equals h1 * h3^3
MINOR_COLUMNS = (0, 2, 3, 4, 5)


class IndependenceWitness(NamedTuple):
    """Differentials of (H, G, h4', h1R, h2R) at the identity and their 5x5 minor."""

    matrix: np.ndarray
    minor_det: float


def hamiltonian(h) -> float:
    """H = (h1^2 + h2^2) / 2."""
    h1, h2, _, _ = as_state_array(h)
    return 0.5 * (h1 ** 2 + h2 ** 2)


def center_momentum_values(T: EngelConstants, h: np.ndarray) -> np.ndarray:
    """Vectorized h4' over the last axis of h; no family check."""
    return h[..., 3] + T.t4 * h[..., 0] - T.t3 * h[..., 1]


def integral_G_values(T: EngelConstants, h: np.ndarray) -> np.ndarray:
    """Vectorized G over the last axis of h; no family check."""
    h1, h2, h3 = h[..., 0], h[..., 1], h[..., 2]
    return (
        0.5 * h3 ** 2
        - center_momentum_values(T, h) * h2
        + 0.25 * (T.t3 + T.t6) * (h1 ** 2 - h2 ** 2)
        + T.t4 * h1 * h2
    )


def center_momentum(T: EngelConstants, h) -> float:
    """
    Momentum h4' = h4 + T4 h1 - T3 h2 of the center element.

    Raises:
        NotTypeIII: If T is not in family III
    """
    require_type3(T)
    return float(center_momentum_values(T, as_state_array(h)))


def integral_G(T: EngelConstants, h) -> float:
    """
    Additional first integral of type-III structures.

    G = h3^2/2 - h4' h2 + (T3 + T6)/4 (h1^2 - h2^2) + T4 h1 h2

    Raises:
        NotTypeIII: If T is not in family III
    """
    require_type3(T)
    return float(integral_G_values(T, as_state_array(h)))


def right_momenta(traj: Trajectory) -> np.ndarray:
    """
    Right-invariant momenta r(t) = -M(t) h(t) along a trajectory.

    Returns:
        (N, 4) array; r(0) = -h(0)
    """
    return -np.einsum("nij,nj->ni", traj.transport, traj.states)


def independence_matrix(T: EngelConstants, h, h4p: float) -> IndependenceWitness:
    """
    Differentials of H, G, h4', h1R, h2R at the identity.

    The eight columns are the derivatives with respect to h1..h4 followed
    by the four group coordinates of the first kind.

    Args:
        T: Type-III invariants
        h: Covector coordinates
        h4p: Value of the center momentum

    Returns:
        IndependenceWitness with the 5x8 matrix and the determinant of the
        minor on columns 1, 3, 4, 5, 6 (equal to h1 h3^3)

    Raises:
        NotTypeIII: If T is not in family III
    """
    require_type3(T)
    h1, h2, h3, _ = as_state_array(h)
    t3, t4, t6 = T.t3, T.t4, T.t6
    s = 0.5 * (t3 + t6)

    matrix = np.array([
        [h1, h2, 0, 0, 0, 0, 0, 0],
        [s * h1 + t4 * h2, -h4p - s * h2 + t4 * h1, h3, -h2, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0],
        [-1, 0, 0, 0, 0, -h3, -h4p + t4 * h1 - t3 * h2, 0],
        [0, -1, 0, 0, h3, 0, -t6 * h1 - t4 * h2, 0],
    ], dtype=float)

    minor_det = float(np.linalg.det(matrix[:, MINOR_COLUMNS]))
    return IndependenceWitness(matrix=matrix, minor_det=minor_det)


def _check_type1_indices(n: int, m: int) -> None:
    if int(n) != n or int(m) != m:
        raise InvalidParams(f"n and m must be integers, got n={n}, m={m}")
    if not (m > n >= 0):
        raise InvalidParams(f"Require m > n >= 0, got n={n}, m={m}")


def type1_constants(n: int, m: int) -> EngelConstants:
    """
    Family-I invariants carrying the polynomial integrals F1, F2.

    T1 = n + m - 1, T3 = n + m - nm, T5 = -nm, T2 = T4 = T6 = 0.

    Raises:
        InvalidParams: Unless m > n >= 0 are integers
    """
    _check_type1_indices(n, m)
    return EngelConstants(t1=n + m - 1, t3=n + m - n * m, t5=-n * m)


def type1_integrals(n: int, m: int, h) -> Tuple[float, float]:
    """
    Polynomial first integrals of orders m + 1 and n + 1.

    Args:
        n, m: Integers with m > n >= 0
        h: Covector coordinates

    Returns:
        (F1, F2)

    Raises:
        InvalidParams: Unless m > n >= 0 are integers
    """
    _check_type1_indices(n, m)
    n, m = int(n), int(m)
    _, h2, h3, h4 = as_state_array(h)

    w = (h4 + m * n * h2 - (m + n) * h3) / ((1 + m) * (1 + n))
    f1 = (h3 + h4 - (h2 + h3) * n) / ((1 + m) * (m - n)) * w ** m
    f2 = (m * (h2 + h3) - h3 - h4) / ((1 + n) * (m - n)) * w ** n
    return f1, f2


def first_integral_drift(values: Sequence[float]) -> float:
    """Max over samples of |F(t) - F(0)|, normalized by 1 + |F(0)|."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values - values[0])) / (1 + abs(values[0])))


def conservation_report(T: EngelConstants, traj: Trajectory, type1: Optional[Tuple[int, int]] = None) -> Dict[str, float]:
    """
    Normalized drifts of the first integrals along a trajectory.

    Always reports H and the four right momenta (r1..r4). Adds G and h4p
    for type-III structures, and F1, F2 when ``type1`` gives (n, m).

    Returns:
        Map from integral name to drift
    """
    states = traj.states
    report = {"H": first_integral_drift(0.5 * (states[:, 0] ** 2 + states[:, 1] ** 2))}

    momenta = right_momenta(traj)
    for i in range(4):
        report[f"r{i + 1}"] = first_integral_drift(momenta[:, i])

    if is_type3(T):
        report["G"] = first_integral_drift(integral_G_values(T, states))
        report["h4p"] = first_integral_drift(center_momentum_values(T, states))

    if type1 is not None:
        n, m = type1
        values = np.array([type1_integrals(n, m, h) for h in states])
        report["F1"] = first_integral_drift(values[:, 0])
        report["F2"] = first_integral_drift(values[:, 1])

    logger.debug(f"Conservation report for {T.as_dict()}: {report}")
    return report
