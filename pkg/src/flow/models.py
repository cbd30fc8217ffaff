"""
Data models for vertical (covector) flows.

A vertical state holds the coordinates h_i = <lambda, X_i> of a covector in
the canonical frame. A trajectory stores the sampled states together with
the transport matrix that maps them to right-invariant momenta.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..config import DEFAULT_ABS_TOL, DEFAULT_METHOD, DEFAULT_REL_TOL, DEFAULT_STEP
from ..errors import InvalidConfig, InvalidParams

METHODS = ("rk4", "rk45_adaptive")
METHOD_ALIASES = {"rk45": "rk45_adaptive", "rkf45": "rk45_adaptive"}


@dataclass(frozen=True)
class VerticalState:
    """Covector coordinates (h1, h2, h3, h4)."""

    h1: float
    h2: float
    h3: float
    h4: float

    def __post_init__(self):
        for name in ("h1", "h2", "h3", "h4"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise InvalidParams(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> 'VerticalState':
        values = list(values)
        if len(values) != 4:
            raise InvalidParams(f"Expected 4 components h1..h4, got {len(values)}")
        return cls(*values)

    def as_array(self) -> np.ndarray:
        return np.array([self.h1, self.h2, self.h3, self.h4])


def as_state_array(h) -> np.ndarray:
    """Accept a VerticalState or any length-4 sequence."""
    if isinstance(h, VerticalState):
        return h.as_array()
    return VerticalState.from_sequence(h).as_array()


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Sampled solution of the vertical system.

    times: (N,) strictly increasing, starting at 0
    states: (N, 4) covector coordinates
    transport: (N, 4, 4) transport matrices, identity at t = 0
    """

    times: np.ndarray
    states: np.ndarray
    transport: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states, dtype=float)
        transport = np.asarray(self.transport, dtype=float)

        n = times.shape[0]
        if times.ndim != 1 or n == 0:
            raise InvalidParams("Trajectory needs a non-empty 1-d time array")
        if states.shape != (n, 4):
            raise InvalidParams(f"States must have shape ({n}, 4), got {states.shape}")
        if transport.shape != (n, 4, 4):
            raise InvalidParams(f"Transport must have shape ({n}, 4, 4), got {transport.shape}")
        if np.any(np.diff(times) <= 0):
            raise InvalidParams("Trajectory times must be strictly increasing")
        if not np.array_equal(transport[0], np.eye(4)):
            raise InvalidParams("Transport must start at the identity")
        if np.any(np.linalg.det(transport) == 0):
            raise InvalidParams("Transport matrices must be invertible")

        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "transport", transport)

    def __len__(self) -> int:
        return self.times.shape[0]

    def state_at(self, index: int) -> VerticalState:
        return VerticalState.from_sequence(self.states[index])


@dataclass(frozen=True)
class IntegratorConfig:
    """
    Integrator settings.

    ``rel_tol`` and ``abs_tol`` are used by the adaptive method only.
    """

    method: str = DEFAULT_METHOD
    step: float = DEFAULT_STEP
    rel_tol: float = DEFAULT_REL_TOL
    abs_tol: float = DEFAULT_ABS_TOL
    t_max: float = 10.0

    def __post_init__(self):
        method = METHOD_ALIASES.get(self.method, self.method)
        if method not in METHODS:
            raise InvalidConfig(f"Unknown integration method {self.method!r}; expected one of {METHODS}")
        object.__setattr__(self, "method", method)

        for name in ("step", "rel_tol", "abs_tol", "t_max"):
            value = float(getattr(self, name))
            if not (np.isfinite(value) and value > 0):
                raise InvalidConfig(f"{name} must be a positive number, got {value}")
            object.__setattr__(self, name, value)

        if self.step >= self.t_max:
            raise InvalidConfig(f"step ({self.step}) must be smaller than t_max ({self.t_max})")

    def with_t_max(self, t_max: float) -> 'IntegratorConfig':
        """Same settings on a different horizon; the step is capped at half of it."""
        return IntegratorConfig(self.method, min(self.step, t_max / 2), self.rel_tol, self.abs_tol, t_max)
