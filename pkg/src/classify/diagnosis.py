"""
Diagnosis of the Lie algebra underlying a type-III structure.

A type-III algebra has the center spanned by X4 + T4 X1 - T3 X2 and is a
central extension of a 3-dimensional algebra whose type is decided by the
sign of D = T4^2 + T3 T6.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..algebra.models import EngelConstants
from ..config import resolve_tol
from .families import require_type3

logger = logging.getLogger(__name__)

SO3_EXTENSION = "so3_extension"
SL2_EXTENSION = "sl2_extension"
EUCLIDEAN_EXTENSION = "trivial_extension_euclidean"
POINCARE_EXTENSION = "trivial_extension_poincare"
SOLVABLE_EXTENSION = "solvable_nontrivial_extension"
NILPOTENT_EXTENSION = "nilpotent_extension"


@dataclass(frozen=True)
class AlgebraDiagnosis:
    """Result of ``diagnose_type3``."""

    d_invariant: float
    kind: str
    center: np.ndarray
    semisimple: bool

    def to_dict(self) -> dict:
        return {
            "d_invariant": self.d_invariant,
            "kind": self.kind,
            "center": [float(x) for x in self.center],
            "semisimple": self.semisimple,
        }


def diagnose_type3(T: EngelConstants, tol: Optional[float] = None) -> AlgebraDiagnosis:
    """
    Identify the algebra of a type-III structure.

    Args:
        T: Invariants of a family-III structure
        tol: Zero threshold (default: global tol_alg)

    Returns:
        AlgebraDiagnosis with D, the algebra kind and the center element
        in the canonical basis

    Raises:
        NotTypeIII: If T is not in family III
    """
    tol = resolve_tol(tol)
    require_type3(T, tol)

    d = T.t4 ** 2 + T.t3 * T.t6
    if abs(d) > tol:
        kind = SO3_EXTENSION if d < 0 and T.t3 < 0 else SL2_EXTENSION
    elif abs(T.t4) > tol or abs(T.t6) > tol:
        kind = SOLVABLE_EXTENSION
    elif T.t3 > tol:
        kind = EUCLIDEAN_EXTENSION
    elif T.t3 < -tol:
        kind = POINCARE_EXTENSION
    else:
        kind = NILPOTENT_EXTENSION

    center = np.array([T.t4, -T.t3, 0.0, 1.0])
    logger.info(f"Type-III diagnosis for {T.as_dict()}: D={d}, {kind}")
    return AlgebraDiagnosis(d_invariant=d, kind=kind, center=center, semisimple=abs(d) > tol)
