"""
Level-one Eisenstein series and the j-invariant as exact q-series.

E_{2k} = 1 + b_k Σ σ_{2k-1}(n) q^n with (b_1, b_2, b_3) = (-24, 240, -504).
The graded companions g_k = a_k E_{2k} carry the (2πi)-powers

    a_1 = (2πi)/12,  a_2 = 12 ((2πi)/12)^2,  a_3 = 8 ((2πi)/12)^3,

stored as the rational parts 1/12, 1/12, 1/216 at grades 1, 2, 3.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from src.errors import DomainError
from src.modular.fundamental_domain import reduce_to_fundamental_domain
from src.series.qseries import Evaluation, QSeries
from src.base import ComplexValue

logger = logging.getLogger(__name__)

EISENSTEIN_B = {1: -24, 2: 240, 3: -504}
EISENSTEIN_A = {1: Fraction(1, 12), 2: Fraction(1, 12), 3: Fraction(1, 216)}


def divisor_sum(n: int, k: int) -> int:
    """σ_k(n) = Σ_{d | n} d^k."""
    if n < 1:
        raise ValueError(f"divisor_sum needs n >= 1, got {n}")
    return int(sp.divisor_sigma(n, k))


def eisenstein_E(k: int, truncation: int) -> QSeries:
    """Ungraded E_{2k} for k in (1, 2, 3)."""
    if k not in EISENSTEIN_B:
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    b = EISENSTEIN_B[k]
    coeffs = [1] + [b * divisor_sum(n, 2 * k - 1) for n in range(1, truncation + 1)]
    return QSeries.from_coefficients(coeffs, truncation)


def eisenstein(k: int, truncation: int) -> QSeries:
    """Graded g_k = a_k E_{2k} at (2πi)-grade k."""
    return eisenstein_E(k, truncation).scale(EISENSTEIN_A[k]).regrade(k)


@dataclass(frozen=True)
class EisensteinBasis:
    """E2, E4, E6 and their graded companions g1, g2, g3 at a common truncation."""
    E2: QSeries
    E4: QSeries
    E6: QSeries
    g1: QSeries
    g2: QSeries
    g3: QSeries

    @classmethod
    def build(cls, truncation: int) -> "EisensteinBasis":
        E = {k: eisenstein_E(k, truncation) for k in (1, 2, 3)}
        g = {k: E[k].scale(EISENSTEIN_A[k]).regrade(k) for k in (1, 2, 3)}
        return cls(E[1], E[2], E[3], g[1], g[2], g[3])

    @property
    def truncation(self) -> int:
        return self.E2.truncation

    def parameters_at(self, tau: complex) -> tuple:
        """Numeric (t1, t2, t3) = (g1, g2, g3)(tau)."""
        return tuple(s(tau) for s in (self.g1, self.g2, self.g3))


def discriminant_series(truncation: int) -> QSeries:
    """Δ = (E4^3 - E6^2)/1728 = q - 24 q^2 + ..."""
    E4 = eisenstein_E(2, truncation)
    E6 = eisenstein_E(3, truncation)
    return (E4.power(3) - E6.power(2)).scale(Fraction(1, 1728))


@dataclass(frozen=True)
class LaurentSeries:
    """q^valuation · series; coefficient(n) reads the coefficient of q^n."""
    series: QSeries
    valuation: int

    def coefficient(self, n: int) -> Fraction:
        return self.series[n - self.valuation]

    def evaluate(self, tau) -> Evaluation:
        if isinstance(tau, ComplexValue):
            tau = tau.to_complex()
        tau = complex(tau)
        inner = self.series.evaluate(tau)
        factor = cmath.exp(2j * math.pi * tau) ** self.valuation
        value = inner.value.to_complex() * factor
        return Evaluation(ComplexValue.from_complex(value), inner.tail_bound * abs(factor))


def j_series(truncation: int) -> LaurentSeries:
    """
    j = 1728 E4^3 / (E4^3 - E6^2) = 1/q + 744 + 196884 q + ...

    Returns q·j through q^truncation wrapped with valuation -1.
    """
    n = truncation + 1
    E4 = eisenstein_E(2, n)
    E6 = eisenstein_E(3, n)
    E4_cubed = E4.power(3)
    delta = E4_cubed - E6.power(2)
    delta_over_q = QSeries(delta.coefficients[1:], 0)
    q_j = E4_cubed.truncate(truncation).scale(1728).mul(delta_over_q.invert())
    logger.debug("j-series computed through q^%d", truncation - 1)
    return LaurentSeries(q_j, -1)


def j_numeric(tau: complex, truncation: int = 60) -> complex:
    """j(tau) through the q-series, after SL(2,Z) reduction."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError(f"Im(tau) must be positive, got {tau.imag}")
    reduced = reduce_to_fundamental_domain(tau).tau
    return j_series(truncation).evaluate(reduced).value.to_complex()
