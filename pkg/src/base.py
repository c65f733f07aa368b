"""
Shared types for qmf.
Report plumbing used by the CLI and the abstract interface for
parametrized families of period matrices.
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np


class ReportStatus(Enum):
    """Outcome of a CLI command."""
    PASS = "pass"
    FAIL = "fail"
    INFO = "info"


@dataclass(frozen=True)
class ComplexValue:
    """A finite complex number as a (re, im) pair of doubles."""
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError(f"non-finite complex value ({self.re}, {self.im})")

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexValue":
        z = complex(z)
        return cls(z.real, z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class Residual:
    """A named numeric check: passes when value <= tolerance."""
    label: str
    value: float
    tolerance: float

    @property
    def ok(self) -> bool:
        # NaN compares False and therefore fails
        return self.value <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        value = float(self.value)
        return {
            "label": self.label,
            "value": value if math.isfinite(value) else repr(value),
            "tolerance": self.tolerance,
            "ok": self.ok,
        }


@dataclass
class Report:
    """Verification report emitted by every CLI command."""
    command: List[str]
    residuals: List[Residual] = field(default_factory=list)
    payload: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    message: Optional[str] = None

    @property
    def status(self) -> ReportStatus:
        if self.error is not None:
            return ReportStatus.FAIL
        if not self.residuals:
            return ReportStatus.INFO
        if all(r.ok for r in self.residuals):
            return ReportStatus.PASS
        return ReportStatus.FAIL

    def add(self, label: str, value: float, tolerance: float) -> Residual:
        """Append a residual and return it."""
        residual = Residual(label, float(value), tolerance)
        self.residuals.append(residual)
        return residual

    def check(self, label: str, condition: bool) -> Residual:
        """Record a boolean check as a 0/1 residual with zero tolerance."""
        return self.add(label, 0.0 if condition else 1.0, 0.0)

    def exit_code(self) -> int:
        return 1 if self.status is ReportStatus.FAIL else 0

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "command": list(self.command),
            "status": self.status.value,
            "residuals": [r.to_dict() for r in self.residuals],
            "payload": self.payload,
        }
        if self.error is not None:
            out["error"] = self.error
        if self.message is not None:
            out["message"] = self.message
        return out


class PeriodPath(ABC):
    """A differentiable family t -> per(t) of period matrices.

    Parameters are complex vectors of length ``dimension``; directional
    derivatives are taken along real multiples of a tangent vector.
    """

    name: str = "path"

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Number of complex parameters."""

    @property
    @abstractmethod
    def frame(self):
        """The HodgeFrame the period matrices belong to."""

    @abstractmethod
    def __call__(self, t: np.ndarray) -> np.ndarray:
        """
        Evaluate the period matrix.

        Args:
            t: Complex parameter vector of length ``dimension``

        Returns:
            h x h complex period matrix
        """

    def default_point(self) -> np.ndarray:
        """A parameter value where the path is well defined."""
        return np.zeros(self.dimension, dtype=complex)
