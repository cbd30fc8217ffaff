"""
Families of left-invariant sub-Riemannian Engel structures.

Every solution of the Jacobi restrictions lies in at least one of five
families, each cut out by simple restrictions on T1..T6:

    I    T2 = T4 = T6 = 0
    II   T4 = T5 = T6 = 0
    III  T1 = T2 = T5 = 0
    IV   T1 = T3 = T4 = T5 = 0
    V    T1 != 0, T4, T5, T6 determined by T1, T2, T3
"""

import itertools
import logging
from enum import Enum
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..algebra.models import EngelConstants
from ..config import resolve_tol
from ..errors import InvalidParams, JacobiViolated, NotTypeIII, Unclassifiable
from .restrictions import jacobi_restrictions

logger = logging.getLogger(__name__)


class FamilyTag(Enum):
    """Family label I..V."""

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"

    @property
    def free_params(self) -> Tuple[str, ...]:
        """Unconstrained invariants of the family."""
        return _FREE_PARAMS[self]

    @classmethod
    def parse(cls, label: str) -> 'FamilyTag':
        """Parse a label such as ``"III"`` (case-insensitive)."""
        try:
            return cls(str(label).strip().upper())
        except ValueError:
            raise InvalidParams(f"Unknown family {label!r}; expected one of {[t.value for t in cls]}")


_FREE_PARAMS = {
    FamilyTag.I: ("T1", "T3", "T5"),
    FamilyTag.II: ("T1", "T2", "T3"),
    FamilyTag.III: ("T3", "T4", "T6"),
    FamilyTag.IV: ("T2", "T6"),
    FamilyTag.V: ("T1", "T2", "T3"),
}

# Invariants forced to zero in each family; V is handled separately
_ZERO_PARAMS = {
    FamilyTag.I: ("t2", "t4", "t6"),
    FamilyTag.II: ("t4", "t5", "t6"),
    FamilyTag.III: ("t1", "t2", "t5"),
    FamilyTag.IV: ("t1", "t3", "t4", "t5"),
}


def _family_v_dependents(t1: float, t2: float, t3: float) -> Tuple[float, float, float]:
    """(T4, T5, T6) of family V."""
    s = t1 ** 2 + 4 * t3
    return (
        0.5 * t2 * s / t1,
        -t1 ** 3 / 8 - 0.5 * t1 * t3,
        -t2 ** 2 * s / t1 ** 2,
    )


def _close(value: float, target: float, tol: float) -> bool:
    return abs(value - target) < tol * (1 + abs(target))


def _matches(tag: FamilyTag, T: EngelConstants, tol: float) -> bool:
    if tag is FamilyTag.V:
        if abs(T.t1) <= tol:
            return False
        t4, t5, t6 = _family_v_dependents(T.t1, T.t2, T.t3)
        return _close(T.t4, t4, tol) and _close(T.t5, t5, tol) and _close(T.t6, t6, tol)
    return all(_close(getattr(T, name), 0.0, tol) for name in _ZERO_PARAMS[tag])


def classify(T: EngelConstants, tol: Optional[float] = None) -> List[FamilyTag]:
    """
    Find every family containing T.

    Args:
        T: Invariants T1..T6
        tol: Membership tolerance (default: global tol_alg)

    Returns:
        Matching families in the order I..V

    Raises:
        JacobiViolated: If T fails the Jacobi restrictions
        Unclassifiable: If T is valid but matches no family
    """
    tol = resolve_tol(tol)
    residuals = jacobi_restrictions(T)
    if np.max(np.abs(residuals)) >= tol:
        raise JacobiViolated(f"Constants {T.as_dict()} violate the Jacobi restrictions", residuals)

    families = [tag for tag in FamilyTag if _matches(tag, T, tol)]
    if not families:
        raise Unclassifiable(
            f"Constants {T.as_dict()} satisfy the Jacobi restrictions but match no family",
            {"constants": T.as_dict()},
        )

    logger.debug(f"Classified {T.as_dict()} as {[tag.value for tag in families]}")
    return families


def build_family(tag: FamilyTag, params: Mapping[str, float]) -> EngelConstants:
    """
    Build the invariants of a family member from its free parameters.

    Args:
        tag: Family
        params: Values of exactly the free parameters, keyed ``T1``..``T6``

    Returns:
        EngelConstants with the constrained entries filled in

    Raises:
        InvalidParams: On missing or extra parameters, or T1 = 0 in family V
    """
    values = {str(key).strip().upper(): float(value) for key, value in params.items()}
    expected = set(tag.free_params)

    missing = sorted(expected - set(values))
    extra = sorted(set(values) - expected)
    if missing or extra:
        raise InvalidParams(
            f"Family {tag.value} takes parameters {list(tag.free_params)}",
            {"missing": missing, "extra": extra},
        )

    if tag is FamilyTag.V:
        t1, t2, t3 = values["T1"], values["T2"], values["T3"]
        if t1 == 0:
            raise InvalidParams("Family V requires T1 != 0")
        t4, t5, t6 = _family_v_dependents(t1, t2, t3)
        return EngelConstants(t1=t1, t2=t2, t3=t3, t4=t4, t5=t5, t6=t6)

    return EngelConstants.from_mapping(values)


def family_samples(tag: FamilyTag, grid: Mapping[str, Sequence[float]]) -> List[EngelConstants]:
    """
    Build family members over the Cartesian product of parameter values.

    Args:
        tag: Family
        grid: Map from each free parameter to its list of values

    Returns:
        One EngelConstants per grid point, last parameter varying fastest
    """
    grid = {str(key).strip().upper(): list(values) for key, values in grid.items()}
    names = list(tag.free_params)
    missing = [name for name in names if name not in grid]
    if missing:
        raise InvalidParams(f"Grid for family {tag.value} is missing {missing}")

    samples = []
    for point in itertools.product(*(grid[name] for name in names)):
        samples.append(build_family(tag, dict(zip(names, point))))
    return samples


def require_type3(T: EngelConstants, tol: Optional[float] = None) -> None:
    """
    Raise NotTypeIII unless T belongs to family III.

    Jacobi violations are reported as NotTypeIII as well.
    """
    try:
        families = classify(T, tol)
    except (JacobiViolated, Unclassifiable) as e:
        raise NotTypeIII(f"Constants {T.as_dict()} are not type III: {e.message}")
    if FamilyTag.III not in families:
        raise NotTypeIII(
            f"Constants {T.as_dict()} are not type III",
            {"families": [tag.value for tag in families]},
        )



def is_type3(T: EngelConstants, tol: Optional[float] = None) -> bool:
    """True when T is a valid family-III structure."""
    try:
        return FamilyTag.III in classify(T, tol)
    except (JacobiViolated, Unclassifiable):
        return False
