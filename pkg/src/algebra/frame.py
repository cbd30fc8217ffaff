"""
Canonical frame extraction.

Given a bracket table and a rank-2 distribution with a metric, checks the
Engel growth condition, finds the characteristic line of the Levi form and
builds the canonical frame x1..x4 together with its invariants T1..T6.
"""

import itertools
import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import cholesky, null_space, solve_triangular

from ..config import resolve_tol
from ..errors import KernelNotInD, NotEngel, OrientationConflict
from .brackets import bracket
from .models import BracketTable, CanonicalFrame, DistributionData, EngelConstants

logger = logging.getLogger(__name__)

ENGEL_GROWTH = (2, 3, 4)


def _rank(vectors: Sequence[np.ndarray], tol: float) -> int:
    """Numerical rank with singular values thresholded relative to the largest one."""
    singular = np.linalg.svd(np.column_stack(vectors), compute_uv=False)
    if singular[0] == 0:
        return 0
    return int(np.sum(singular > tol * singular[0]))


def growth_vector(table: BracketTable, dist: DistributionData, tol: Optional[float] = None) -> Tuple[int, int, int]:
    """
    Dimensions of D, D^2 = D + [D, D] and D^3 = D^2 + [D, D^2].

    Does not raise on non-Engel input; see ``engel_flag``.
    """
    tol = resolve_tol(tol)
    d1, d2 = dist.d1, dist.d2
    d3 = bracket(table, d1, d2)
    first = [d1, d2]
    second = first + [d3]
    third = second + [bracket(table, d1, d3), bracket(table, d2, d3)]
    return (_rank(first, tol), _rank(second, tol), _rank(third, tol))


def engel_flag(table: BracketTable, dist: DistributionData, tol: Optional[float] = None) -> Tuple[int, int, int]:
    """
    Check the Engel growth condition.

    Args:
        table: Structure constants
        dist: Distribution data
        tol: Rank threshold (default: global tol_alg)

    Returns:
        The growth vector (2, 3, 4)

    Raises:
        NotEngel: If the growth vector is anything else
    """
    growth = growth_vector(table, dist, tol)
    if growth != ENGEL_GROWTH:
        raise NotEngel(
            f"Distribution has growth vector {growth}, expected {ENGEL_GROWTH}",
            {"growth_vector": list(growth)},
        )
    return growth


def _kernel_coefficients(table: BracketTable, dist: DistributionData, tol: float) -> np.ndarray:
    """Coefficients in the (d1, d2) basis of the g-unit Levi kernel vector."""
    engel_flag(table, dist, tol)

    d1, d2 = dist.d1, dist.d2
    square = [d1, d2, bracket(table, d1, d2)]

    # covector annihilating D^2 realizes the quotient TM / D^2
    annihilator = null_space(np.column_stack(square).T)[:, 0]
    levi = np.array([
        [annihilator @ bracket(table, u, v) for v in square]
        for u in square
    ])

    kernel = null_space(levi, rcond=tol)
    if kernel.shape[1] != 1:
        raise KernelNotInD(
            f"Levi form kernel has dimension {kernel.shape[1]}, expected 1",
            {"kernel_dimension": int(kernel.shape[1])},
        )

    alpha = kernel[:, 0]
    if abs(alpha[2]) > tol * np.linalg.norm(alpha):
        raise KernelNotInD(
            "Levi form kernel is not contained in the distribution",
            {"kernel": alpha.tolist()},
        )

    beta = alpha[:2]
    beta = beta / np.sqrt(beta @ dist.metric @ beta)
    if beta[np.argmax(np.abs(beta))] < 0:
        beta = -beta
    return beta


def levi_kernel(table: BracketTable, dist: DistributionData, tol: Optional[float] = None) -> np.ndarray:
    """
    Unit vector of D spanning the kernel of the Levi form on D^2.

    Args:
        table: Structure constants
        dist: Distribution data
        tol: Rank threshold (default: global tol_alg)

    Returns:
        4-vector k in D with g(k, k) = 1

    Raises:
        NotEngel: If the growth vector is not (2, 3, 4)
        KernelNotInD: If the computed kernel leaves D
    """
    return dist.basis @ _kernel_coefficients(table, dist, resolve_tol(tol))


def canonical_frame(table: BracketTable, dist: DistributionData, tol: Optional[float] = None) -> CanonicalFrame:
    """
    Build the canonical frame and read off T1..T6.

    x2 spans the Levi kernel, x1 is its unit g-orthogonal complement in D,
    x3 = [x1, x2] and x4 = [x1, x3]. The signs of x1 and x2 are chosen to
    match ``dist.orient_D`` and ``dist.orient_M``.

    Args:
        table: Structure constants
        dist: Distribution data
        tol: Rank threshold (default: global tol_alg)

    Returns:
        CanonicalFrame with vectors in the input basis

    Raises:
        NotEngel: If the growth vector is not (2, 3, 4)
        KernelNotInD: If the kernel leaves D or [x2, x3] has an x4 component
        OrientationConflict: If no sign choice matches both orientations
    """
    tol = resolve_tol(tol)
    beta = _kernel_coefficients(table, dist, tol)

    # g = L L^T, so L^T maps D with g isometrically onto R^2
    lower = cholesky(dist.metric, lower=True)
    gamma = lower.T @ beta
    alpha = solve_triangular(lower.T, np.array([gamma[1], -gamma[0]]), lower=False)

    basis = dist.basis
    for s1, s2 in itertools.product((1, -1), repeat=2):
        a1, a2 = s1 * alpha, s2 * beta
        x1, x2 = basis @ a1, basis @ a2
        x3 = bracket(table, x1, x2)
        x4 = bracket(table, x1, x3)
        frame = np.column_stack([x1, x2, x3, x4])
        if (np.sign(np.linalg.det(np.column_stack([a1, a2]))) == dist.orient_D
                and np.sign(np.linalg.det(frame)) == dist.orient_M):
            break
    else:
        raise OrientationConflict(
            f"No sign choice matches orient_M={dist.orient_M}, orient_D={dist.orient_D}"
        )

    _, t5, t3, t1 = np.linalg.solve(frame, bracket(table, x1, x4))
    t6, t4, t2, x4_part = np.linalg.solve(frame, bracket(table, x2, x3))
    if abs(x4_part) > tol * (1 + np.linalg.norm([t6, t4, t2])):
        raise KernelNotInD(
            f"[x2, x3] has x4 component {x4_part}",
            {"x4_component": float(x4_part)},
        )

    constants = EngelConstants(t1, t2, t3, t4, t5, t6)
    logger.debug(f"Canonical frame found with invariants {constants.as_dict()}")
    return CanonicalFrame(x1=x1, x2=x2, x3=x3, x4=x4, constants=constants)
