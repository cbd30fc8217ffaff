"""
Data models for 4-dimensional Lie algebras carrying an Engel structure.

Indices are 0-based internally: ``c[i, j, k]`` is the structure constant
c^(k+1)_(i+1)(j+1), so ``[e_i, e_j] = sum_k c[i, j, k] e_k``.
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from ..config import resolve_tol
from ..errors import InvalidDistribution, InvalidParams

DIM = 4
CONSTANT_NAMES = ("T1", "T2", "T3", "T4", "T5", "T6")


def _as_vector(values, size: int, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (size,):
        raise InvalidParams(f"{name} must have {size} components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidParams(f"{name} has non-finite components")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BracketTable:
    """
    Full structure-constant tensor of a 4-dimensional Lie algebra.

    Antisymmetry in the lower indices is checked exactly. The Jacobi identity
    is not enforced here; see ``jacobi_residual``.
    """

    c: np.ndarray

    def __post_init__(self):
        arr = np.array(self.c, dtype=float)
        if arr.shape != (DIM, DIM, DIM):
            raise InvalidParams(f"Bracket table must be 4x4x4, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidParams("Bracket table has non-finite entries")
        if not np.array_equal(arr, -arr.transpose(1, 0, 2)):
            raise InvalidParams("Bracket table is not antisymmetric in its lower indices")
        arr.setflags(write=False)
        object.__setattr__(self, "c", arr)

    @classmethod
    def from_brackets(cls, brackets: Mapping[Tuple[int, int], Sequence[float]]) -> 'BracketTable':
        """
        Build a table from the brackets [e_i, e_j] for i < j.

        Args:
            brackets: Map from 1-based index pairs (i, j) to the 4 coefficients
                of [e_i, e_j]; unlisted pairs bracket to zero

        Returns:
            BracketTable with the antisymmetric completion
        """
        c = np.zeros((DIM, DIM, DIM))
        for (i, j), coeffs in brackets.items():
            if not (1 <= i <= DIM and 1 <= j <= DIM) or i == j:
                raise InvalidParams(f"Invalid bracket index pair ({i}, {j})")
            vec = np.asarray(coeffs, dtype=float)
            c[i - 1, j - 1, :] = vec
            c[j - 1, i - 1, :] = -vec
        return cls(c)

    def nonzero_entries(self, tol: float = 0.0) -> Dict[Tuple[int, int, int], float]:
        """Map 1-based (i, j, k) with i < j to c^k_ij where |c^k_ij| > tol."""
        entries = {}
        for i in range(DIM):
            for j in range(i + 1, DIM):
                for k in range(DIM):
                    if abs(self.c[i, j, k]) > tol:
                        entries[(i + 1, j + 1, k + 1)] = float(self.c[i, j, k])
        return entries


@dataclass(frozen=True, eq=False)
class DistributionData:
    """
    Rank-2 distribution with a metric and orientation choices.

    ``metric`` is the Gram matrix of g in the (d1, d2) basis.
    """

    d1: np.ndarray
    d2: np.ndarray
    metric: np.ndarray = field(default_factory=lambda: np.eye(2))
    orient_M: int = 1
    orient_D: int = 1

    def __post_init__(self):
        try:
            d1 = _as_vector(self.d1, DIM, "d1")
            d2 = _as_vector(self.d2, DIM, "d2")
        except InvalidParams as e:
            raise InvalidDistribution(str(e)) from e

        metric = np.array(self.metric, dtype=float)
        if metric.shape != (2, 2):
            raise InvalidDistribution(f"Metric must be 2x2, got shape {metric.shape}")
        if not np.allclose(metric, metric.T, rtol=0.0, atol=resolve_tol(None)):
            raise InvalidDistribution("Metric is not symmetric")
        metric = 0.5 * (metric + metric.T)
        if np.min(np.linalg.eigvalsh(metric)) <= 0:
            raise InvalidDistribution("Metric is not positive definite")

        singular = np.linalg.svd(np.column_stack([d1, d2]), compute_uv=False)
        if singular[0] == 0 or singular[1] <= resolve_tol(None) * singular[0]:
            raise InvalidDistribution("d1 and d2 are linearly dependent")

        for name in ("orient_M", "orient_D"):
            if getattr(self, name) not in (1, -1):
                raise InvalidDistribution(f"{name} must be +1 or -1, got {getattr(self, name)}")

        metric.setflags(write=False)
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)
        object.__setattr__(self, "metric", metric)

    @property
    def basis(self) -> np.ndarray:
        """4x2 matrix with columns d1, d2."""
        return np.column_stack([self.d1, self.d2])

    @classmethod
    def standard(cls) -> 'DistributionData':
        """span(e1, e2) with the identity metric and positive orientations."""
        return cls(d1=np.eye(DIM)[0], d2=np.eye(DIM)[1])


@dataclass(frozen=True)
class EngelConstants:
    """The six basic invariants T1..T6 of a left-invariant structure."""

    t1: float = 0.0
    t2: float = 0.0
    t3: float = 0.0
    t4: float = 0.0
    t5: float = 0.0
    t6: float = 0.0

    def __post_init__(self):
        for name in ("t1", "t2", "t3", "t4", "t5", "t6"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise InvalidParams(f"{name.upper()} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> 'EngelConstants':
        """Build from (T1, ..., T6)."""
        values = list(values)
        if len(values) != 6:
            raise InvalidParams(f"Expected 6 constants T1..T6, got {len(values)}")
        return cls(*values)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, float]) -> 'EngelConstants':
        """Build from a map with keys T1..T6 (case-insensitive); missing keys are 0."""
        kwargs = {}
        for key, value in mapping.items():
            name = str(key).strip().upper()
            if name not in CONSTANT_NAMES:
                raise InvalidParams(f"Unknown constant {key!r}; expected one of {CONSTANT_NAMES}")
            kwargs[name.lower()] = value
        return cls(**kwargs)

    def as_array(self) -> np.ndarray:
        return np.array([self.t1, self.t2, self.t3, self.t4, self.t5, self.t6])

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(CONSTANT_NAMES, self.as_array().tolist()))

    def left_invariant_valid(self, tol=None) -> bool:
        """True when all Jacobi restrictions hold to the tolerance."""
        from ..classify.restrictions import jacobi_restrictions

        return bool(np.max(np.abs(jacobi_restrictions(self))) < resolve_tol(tol))


@dataclass(frozen=True, eq=False)
class CanonicalFrame:
    """Canonical frame x1..x4 in the input basis, with its invariants."""

    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray
    x4: np.ndarray
    constants: EngelConstants

    @property
    def matrix(self) -> np.ndarray:
        """4x4 matrix with columns x1..x4."""
        return np.column_stack([self.x1, self.x2, self.x3, self.x4])

    def vectors(self) -> Tuple[np.ndarray, ...]:
        return (self.x1, self.x2, self.x3, self.x4)


@dataclass(frozen=True)
class FrameDerivatives:
    """
    Frame derivatives of the invariants entering the general structure equations.

    Field ``x1x1_t2`` stands for X1(X1(T2)), ``x2_c14_1`` for X2(C^1_14), etc.
    All vanish for left-invariant structures.
    """

    x1_t2: float = 0.0
    x1x1_t2: float = 0.0
    x1_t4: float = 0.0
    x1x1_t4: float = 0.0
    x1_t6: float = 0.0
    x1x1_t6: float = 0.0
    x2_t1: float = 0.0
    x2_t3: float = 0.0
    x2_t5: float = 0.0
    x3_t1: float = 0.0
    x2_c14_1: float = 0.0
