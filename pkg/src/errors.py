"""
Error hierarchy for Engel structure computations.

Every domain error carries a stable machine-readable ``code`` (the class
name) and an optional ``details`` dict that the CLI serializes verbatim.
"""

from typing import Any, Dict, Optional


class EngelError(ValueError):
    """Base class for all domain errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_dict(self) -> Dict[str, Any]:
        """Structured form used in CLI error reports."""
        return {"code": self.code, "message": self.message, "details": self.details}


class NotEngel(EngelError):
    """Growth vector of the distribution differs from (2, 3, 4)."""


class KernelNotInD(EngelError):
    """Levi-form kernel is not contained in the distribution."""


class OrientationConflict(EngelError):
    """No Z2 x Z2 sign choice matches the requested orientations."""


class JacobiViolated(EngelError):
    """Constants T1..T6 do not satisfy the Jacobi restrictions."""

    def __init__(self, message: str, residuals):
        super().__init__(message, {"residuals": [float(r) for r in residuals]})

    @property
    def residuals(self):
        return self.details["residuals"]


class Unclassifiable(EngelError):
    """Valid constants that match no family."""


class InvalidParams(EngelError):
    """Bad parameters for a builder or an operation."""


class NotTypeIII(EngelError):
    """Operation requires a type-III structure."""


class StepRejected(EngelError):
    """Adaptive integrator could not make progress."""


class OutOfDomain(EngelError):
    """Time outside the domain of a coefficient profile."""


class InvalidDistribution(EngelError):
    """Distribution vectors dependent or metric not positive definite."""


class InvalidConfig(EngelError):
    """Malformed configuration, integrator settings or input file."""
