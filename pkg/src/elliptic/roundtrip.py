"""
Inverse-period round trip for the elliptic family.

Starting from τ, the Eisenstein parameters t = (g1, g2, g3)(τ) define a
curve E_t; its normalized periods give a ratio x1/x3 that must agree with
τ up to SL(2,Z).  Two independent comparisons are reported: j through the
q-series at the reduced ratio against j from t, and the reduced points.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.elliptic.periods import EllipticParameters, period_data, j_from_parameters
from src.errors import DomainError
from src.modular.eisenstein import EisensteinBasis, j_series
from src.modular.fundamental_domain import (
    fundamental_domain_distance,
    reduce_to_fundamental_domain,
)

logger = logging.getLogger(__name__)

ROUNDTRIP_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class RoundTripReport:
    tau: complex
    parameters: Tuple[complex, complex, complex]
    per: np.ndarray
    ratio: complex
    reduced_ratio: complex
    reduced_tau: complex
    j_from_periods: complex
    j_from_parameters: complex
    legendre_residual: float

    @property
    def j_mismatch(self) -> float:
        """|j(ratio) − j(τ)| relative to max(1, |j(τ)|)."""
        scale = max(1.0, abs(self.j_from_parameters))
        return abs(self.j_from_periods - self.j_from_parameters) / scale

    @property
    def point_mismatch(self) -> float:
        return fundamental_domain_distance(self.reduced_ratio, self.reduced_tau)

    @property
    def ok(self) -> bool:
        return self.j_mismatch < ROUNDTRIP_TOL and self.point_mismatch < ROUNDTRIP_TOL


def inverse_roundtrip(tau: complex, truncation: int) -> RoundTripReport:
    """
    Run τ → t → per(t) → ratio and compare against τ.

    Args:
        tau: Point of the upper half-plane (Im τ ≥ 0.8 recommended)
        truncation: Number of q-series terms

    Raises:
        DomainError: Im τ ≤ 0
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError(f"Im(tau) must be positive, got {tau.imag}")
    if tau.imag < 0.8:
        logger.info("Im(tau) = %.3f is small; q-series converge slowly", tau.imag)

    basis = EisensteinBasis.build(truncation)
    t = EllipticParameters(*basis.parameters_at(tau))
    data = period_data(t)

    reduced_ratio = reduce_to_fundamental_domain(data.ratio).tau
    reduced_tau = reduce_to_fundamental_domain(tau).tau
    j_periods = j_series(truncation).evaluate(reduced_ratio).value.to_complex()

    report = RoundTripReport(
        tau=tau,
        parameters=t.as_tuple(),
        per=data.per,
        ratio=data.ratio,
        reduced_ratio=reduced_ratio,
        reduced_tau=reduced_tau,
        j_from_periods=j_periods,
        j_from_parameters=complex(j_from_parameters(t)),
        legendre_residual=data.legendre_residual,
    )
    logger.debug("round trip at %s: j mismatch %.3e", tau, report.j_mismatch)
    return report
