"""
Bracket arithmetic on structure-constant tables.

Covers the bracket itself, the Jacobi residual of a table, the constant
structure equations of the canonical frame built from T1..T6, and the derived
structure constants of the general (non-constant) frame.
"""

import logging
from typing import NamedTuple, Optional

import numpy as np

from ..config import resolve_tol
from ..errors import JacobiViolated
from .models import BracketTable, EngelConstants, FrameDerivatives
from ..classify.restrictions import jacobi_restrictions

logger = logging.getLogger(__name__)


class DerivedConstants(NamedTuple):
    """Structure constants of the canonical frame not among T1..T6."""

    c14_1: float
    c34_3: float
    c34_2: float
    c34_1: float
    c34_4: float
    c24_3: float


def bracket(table: BracketTable, v, w) -> np.ndarray:
    """
    Bracket of two vectors.

    Args:
        table: Structure constants
        v, w: 4-vectors in the table's basis

    Returns:
        sum_ijk c^k_ij v^i w^j e_k
    """
    return np.einsum("ijk,i,j->k", table.c, np.asarray(v, dtype=float), np.asarray(w, dtype=float))


def ad_matrix(table: BracketTable, u) -> np.ndarray:
    """Matrix of ad_u; column j is [u, e_j]."""
    return np.einsum("i,ijk->kj", np.asarray(u, dtype=float), table.c)


def coadjoint_matrix(table: BracketTable, u) -> np.ndarray:
    """
    Matrix K(u) of the Lie-Poisson flow h' = K(u) h for Hamiltonian <h, u>-type controls.

    K(u)[i, k] = sum_j u_j c^k_ji, the transpose of ``ad_matrix``.
    """
    return ad_matrix(table, u).T


def jacobi_residual(table: BracketTable) -> float:
    """
    Largest violation of the Jacobi identity over basis triples.

    Args:
        table: Antisymmetric structure constants

    Returns:
        max over (i, j, k) of |[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]|_inf
    """
    c = table.c
    cyclic = (
        np.einsum("ijm,mkl->ijkl", c, c)
        + np.einsum("jkm,mil->ijkl", c, c)
        + np.einsum("kim,mjl->ijkl", c, c)
    )
    return float(np.max(np.abs(cyclic)))


def nilpotent_engel_table() -> BracketTable:
    """The standard nilpotent Engel algebra [e1,e2]=e3, [e1,e3]=e4."""
    return BracketTable.from_brackets({(1, 2): (0, 0, 1, 0), (1, 3): (0, 0, 0, 1)})


def structure_constants_from_T(T: EngelConstants, tol: Optional[float] = None) -> BracketTable:
    """
    Bracket table of the canonical left-invariant frame with invariants T.

    Args:
        T: Invariants T1..T6
        tol: Tolerance on the Jacobi restrictions (default: global tol_alg)

    Returns:
        BracketTable of the constant structure equations

    Raises:
        JacobiViolated: If T does not satisfy the Jacobi restrictions
    """
    residuals = jacobi_restrictions(T)
    if np.max(np.abs(residuals)) >= resolve_tol(tol):
        raise JacobiViolated(
            f"Constants {T.as_dict()} violate the Jacobi restrictions",
            residuals,
        )

    t1, t2, t3, t4, t5, t6 = T.as_array()
    a = t1 * t4
    b = t2 * t5 - t3 * t4
    c = 0.5 * t1 * t2 * t4 - t3 * t6

    table = BracketTable.from_brackets({
        (1, 2): (0, 0, 1, 0),
        (1, 3): (0, 0, 0, 1),
        (1, 4): (0.5 * a, t5, t3, t1),
        (2, 3): (t6, t4, t2, 0),
        (2, 4): (0, 0, t4, t2),
        (3, 4): (c, b, -0.5 * a, t4),
    })
    logger.debug(f"Built structure constants for {T.as_dict()}")
    return table


def derived_constants(T: EngelConstants, derivs: Optional[FrameDerivatives] = None) -> DerivedConstants:
    """
    Evaluate the remaining structure functions of the canonical frame.

    Args:
        T: Invariants T1..T6 at a point
        derivs: Frame derivatives of the invariants (all zero if omitted)

    Returns:
        DerivedConstants (C^1_14, C^3_34, C^2_34, C^1_34, C^4_34, C^3_24)
    """
    d = derivs or FrameDerivatives()
    t1, t2, t3, t4, t5, t6 = T.as_array()

    c14_1 = 0.5 * (t1 * t4 + t1 * d.x1_t2 - 3 * d.x1_t4 + d.x2_t3 + d.x3_t1 - d.x1x1_t2)
    c34_3 = -0.5 * (t1 * t4 + t1 * d.x1_t2 - d.x1_t4 + d.x2_t3 - d.x3_t1 - d.x1x1_t2)
    c34_2 = t2 * t5 - t3 * t4 - t1 * d.x1_t4 - d.x2_t5 + d.x1x1_t4
    c34_1 = t2 * c14_1 - t6 * t3 - t1 * d.x1_t6 - d.x2_c14_1 + d.x1x1_t6
    c34_4 = t4 + 2 * d.x1_t2 - d.x2_t1
    c24_3 = t4 + d.x1_t2

    return DerivedConstants(c14_1, c34_3, c34_2, c34_1, c34_4, c24_3)
