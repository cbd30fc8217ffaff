"""
Data models for the Jacobi analysis along abnormal geodesics.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.interpolate import CubicSpline

from ..algebra.models import EngelConstants
from ..errors import InvalidConfig, InvalidParams, OutOfDomain

logger = logging.getLogger(__name__)

ScalarFunction = Callable[[float], float]

VERDICTS = ("minimizer", "not_minimizer", "inconclusive")
PROFILE_COLUMNS = ("t", "T2", "T6")


@dataclass(frozen=True)
class JacobiState:
    """Coefficients (a1, a2, a3, a4) of A(t) = e^{tX2}_* X1 in the canonical frame."""

    a1: float
    a2: float
    a3: float
    a4: float

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> 'JacobiState':
        values = list(values)
        if len(values) != 4:
            raise InvalidParams(f"Expected 4 components a1..a4, got {len(values)}")
        return cls(*(float(v) for v in values))

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3, self.a4])


@dataclass(frozen=True)
class CoefficientProfile:
    """
    Time profiles T2(t), T6(t) and optionally T4(t) along an abnormal curve.

    Defined on [0, horizon]. When ``t2_dot`` is not supplied the derivative
    of T2 is taken by finite differences with step ``fd_step``: central in
    the interior, second-order one-sided near the ends.
    """

    t2: ScalarFunction
    t6: ScalarFunction
    horizon: float
    t2_dot: Optional[ScalarFunction] = None
    t4: Optional[ScalarFunction] = None
    fd_step: float = 1e-5
    source: str = field(default="callables", compare=False)

    def __post_init__(self):
        horizon = float(self.horizon)
        if not (np.isfinite(horizon) and horizon > 0):
            raise InvalidParams(f"Profile horizon must be positive, got {self.horizon}")
        object.__setattr__(self, "horizon", horizon)
        if not (self.fd_step > 0 and self.fd_step < horizon / 2):
            raise InvalidParams(f"fd_step must lie in (0, horizon/2), got {self.fd_step}")

    @classmethod
    def from_constants(cls, t2: float, t6: float, horizon: float, t4: Optional[float] = None) -> 'CoefficientProfile':
        """Constant profile, as produced by a left-invariant structure."""
        t2, t6 = float(t2), float(t6)
        t4_fn = None if t4 is None else (lambda t, v=float(t4): v)
        return cls(
            t2=lambda t: t2,
            t6=lambda t: t6,
            horizon=horizon,
            t2_dot=lambda t: 0.0,
            t4=t4_fn,
            source="constants",
        )

    @classmethod
    def from_engel_constants(cls, T: EngelConstants, horizon: float) -> 'CoefficientProfile':
        return cls.from_constants(T.t2, T.t6, horizon, t4=T.t4)

    @classmethod
    def from_callables(
        cls,
        t2: ScalarFunction,
        t6: ScalarFunction,
        horizon: float,
        t2_dot: Optional[ScalarFunction] = None,
        t4: Optional[ScalarFunction] = None,
    ) -> 'CoefficientProfile':
        return cls(t2=t2, t6=t6, horizon=horizon, t2_dot=t2_dot, t4=t4)

    @classmethod
    def from_samples(
        cls,
        times: Sequence[float],
        t2_values: Sequence[float],
        t6_values: Sequence[float],
        t4_values: Optional[Sequence[float]] = None,
    ) -> 'CoefficientProfile':
        """
        Interpolate sampled coefficients with cubic splines.

        The T2 derivative is taken by second-order finite differences on the
        sample grid and interpolated the same way.

        Args:
            times: Strictly increasing sample times starting at 0
            t2_values, t6_values: Samples of T2 and T6
            t4_values: Optional samples of T4

        Returns:
            CoefficientProfile on [0, times[-1]]

        Raises:
            InvalidParams: On fewer than 3 samples, mismatched lengths,
                non-increasing times or a grid not starting at 0
        """
        times = np.asarray(times, dtype=float)
        columns = {"T2": t2_values, "T6": t6_values}
        if t4_values is not None:
            columns["T4"] = t4_values
        arrays = {name: np.asarray(values, dtype=float) for name, values in columns.items()}

        if times.ndim != 1 or times.size < 3:
            raise InvalidParams(f"Need at least 3 samples, got {times.size}")
        for name, values in arrays.items():
            if values.shape != times.shape:
                raise InvalidParams(f"{name} has {values.size} samples, expected {times.size}")
            if not np.all(np.isfinite(values)):
                raise InvalidParams(f"{name} has non-finite samples")
        if np.any(np.diff(times) <= 0):
            raise InvalidParams("Sample times must be strictly increasing")
        if abs(times[0]) > 1e-12 * (1 + abs(times[-1])):
            raise InvalidParams(f"Sample times must start at 0, got {times[0]}")

        splines = {name: CubicSpline(times, values) for name, values in arrays.items()}
        t2_dot = CubicSpline(times, np.gradient(arrays["T2"], times, edge_order=2))

        min_spacing = float(np.min(np.diff(times)))
        return cls(
            t2=lambda t: float(splines["T2"](t)),
            t6=lambda t: float(splines["T6"](t)),
            horizon=float(times[-1]),
            t2_dot=lambda t: float(t2_dot(t)),
            t4=(lambda t: float(splines["T4"](t))) if "T4" in splines else None,
            fd_step=min(1e-5, min_spacing / 4),
            source="samples",
        )

    @classmethod
    def from_csv(cls, path: str) -> 'CoefficientProfile':
        """
        Load sampled coefficients from a CSV file with columns t, T2, T6 and optionally T4.

        Raises:
            FileNotFoundError: If the file does not exist
            InvalidConfig: If columns are missing or samples are invalid
        """
        file_path = Path(path)
        if not file_path.exists():
            raise FileNotFoundError(f"Profile file not found: {path}")

        try:
            df = pd.read_csv(file_path)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise InvalidConfig(f"Could not parse profile {path}: {e}")

        df.columns = [str(c).strip() for c in df.columns]
        missing = [c for c in PROFILE_COLUMNS if c not in df.columns]
        if missing:
            raise InvalidConfig(f"Profile {path} is missing columns {missing}")

        logger.info(f"Loaded {len(df)} profile samples from {path}")
        try:
            return cls.from_samples(
                df["t"].to_numpy(dtype=float),
                df["T2"].to_numpy(dtype=float),
                df["T6"].to_numpy(dtype=float),
                df["T4"].to_numpy(dtype=float) if "T4" in df.columns else None,
            )
        except (InvalidParams, ValueError) as e:
            raise InvalidConfig(f"Invalid profile {path}: {e}")

    @property
    def has_t4(self) -> bool:
        return self.t4 is not None

    def check_time(self, t: float) -> float:
        """Return t as a float, raising OutOfDomain outside [0, horizon]."""
        t = float(t)
        slack = 1e-12 * (1 + self.horizon)
        if not (-slack <= t <= self.horizon + slack):
            raise OutOfDomain(
                f"t={t} outside profile domain [0, {self.horizon}]",
                {"t": t, "horizon": self.horizon},
            )
        return min(max(t, 0.0), self.horizon)

    def t2_at(self, t: float) -> float:
        return float(self.t2(self.check_time(t)))

    def t6_at(self, t: float) -> float:
        return float(self.t6(self.check_time(t)))

    def t4_at(self, t: float) -> Optional[float]:
        if self.t4 is None:
            return None
        return float(self.t4(self.check_time(t)))

    def t2_dot_at(self, t: float) -> float:
        t = self.check_time(t)
        if self.t2_dot is not None:
            return float(self.t2_dot(t))

        f, h = self.t2, self.fd_step
        if t - h < 0:
            return (-3 * f(t) + 4 * f(t + h) - f(t + 2 * h)) / (2 * h)
        if t + h > self.horizon:
            return (3 * f(t) - 4 * f(t - h) + f(t - 2 * h)) / (2 * h)
        return (f(t + h) - f(t - h)) / (2 * h)


@dataclass(frozen=True)
class MinimalityVerdict:
    """
    Outcome of the conjugate-point analysis on [0, tau].

    ``basis`` names the criterion that decided the verdict.
    """

    verdict: str
    first_conjugate: Optional[float]
    basis: str
    conjugate_times: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise InvalidParams(f"Unknown verdict {self.verdict!r}")

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "first_conjugate": self.first_conjugate,
            "basis": self.basis,
            "conjugate_times": list(self.conjugate_times),
        }
