"""
Jacobi restrictions on the invariants of a left-invariant Engel structure.

Substituting the constant structure equations into the Jacobi identity leaves
six polynomial conditions on T1..T6; the structure is a Lie algebra iff all
six vanish.
"""

import numpy as np

from ..algebra.models import EngelConstants


def jacobi_restrictions(T: EngelConstants) -> np.ndarray:
    """
    Evaluate the six Jacobi restrictions.

    Args:
        T: Invariants T1..T6

    Returns:
        Array of the six left-hand sides, in the standard order
    """
    t1, t2, t3, t4, t5, t6 = T.as_array()
    return np.array([
        t1 * t6 + 2 * t2 * t4,
        t1 ** 2 * t4 + 4 * t2 * t5,
        t1 * t3 * t4 - t1 * t2 * t5 + 2 * t4 * t5,
        t1 * t4 ** 2 - t1 ** 2 * t2 * t4 + 2 * t1 * t3 * t6 + 2 * t5 * t6,
        t1 * t4 ** 2 + 4 * t2 ** 2 * t5 - 4 * t2 * t3 * t4 + 2 * t5 * t6,
        t1 * t2 ** 2 * t4 + t1 * t4 * t6 - 2 * t2 * t3 * t6,
    ])
