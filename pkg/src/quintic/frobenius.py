"""
Frobenius solutions of the mirror-quintic Picard–Fuchs operator

    L = θ⁴ − 5z(5θ + 1)(5θ + 2)(5θ + 3)(5θ + 4),    θ = z d/dz,

at the point of maximal unipotent monodromy z = 0.

The solutions are read off from y(z, ε) = z^ε Σ a_n(ε) zⁿ, where

    (n + ε)⁴ a_n(ε) = 5 Π_{j=1..4} (5(n − 1 + ε) + j) · a_{n−1}(ε),  a_0 = 1.

Writing A_j = [ε^j] Σ a_n(ε) zⁿ, the k-th solution is
Σ_{l≤k} (log z)^l / l! · A_{k−l}.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Tuple

from src.series.qseries import QSeries

logger = logging.getLogger(__name__)

EPSILON_ORDER = 3


@dataclass(frozen=True)
class FrobeniusBasis:
    """y0 = A_0 and the pure power-series parts A_1, A_2, A_3."""
    y0: QSeries
    log_parts: Tuple[QSeries, QSeries, QSeries]

    @property
    def truncation(self) -> int:
        return self.y0.truncation

    @property
    def parts(self) -> Tuple[QSeries, ...]:
        return (self.y0,) + tuple(self.log_parts)

    def solution(self, k: int) -> "LogSeries":
        """The k-th solution Σ_{l≤k} (log z)^l/l! · A_{k−l} (k = 0..3)."""
        return LogSeries(tuple(self.parts[k - l] for l in range(k + 1)))


def _epsilon_factor(n: int) -> QSeries:
    """5 Π_j (5(n − 1 + ε) + j) / (n + ε)⁴ as a series in ε."""
    numerator = QSeries.constant(5, EPSILON_ORDER)
    for j in range(1, 5):
        numerator = numerator.mul(QSeries.from_coefficients([5 * (n - 1) + j, 5], EPSILON_ORDER))
    denominator = QSeries.from_coefficients([n, 1], EPSILON_ORDER).power(4)
    return numerator.mul(denominator.invert())


def frobenius_coefficients(truncation: int) -> List[QSeries]:
    """a_0(ε) .. a_N(ε), each truncated at ε³."""
    a = [QSeries.one(EPSILON_ORDER)]
    for n in range(1, truncation + 1):
        a.append(a[-1].mul(_epsilon_factor(n)))
    return a


def picard_fuchs_solve(truncation: int) -> FrobeniusBasis:
    """
    Frobenius basis to order z^N.

    Args:
        truncation: N >= 1

    Returns:
        FrobeniusBasis with y0 coefficients (5n)!/(n!)^5
    """
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    a = frobenius_coefficients(truncation)
    parts = [
        QSeries.from_coefficients([a_n[j] for a_n in a], truncation)
        for j in range(EPSILON_ORDER + 1)
    ]
    logger.debug("Frobenius basis to order %d: a_1 = %s", truncation, parts[0][1])
    return FrobeniusBasis(parts[0], tuple(parts[1:]))


# ---------------------------------------------------------- log-series calculus

@dataclass(frozen=True)
class LogSeries:
    """Σ_l (log z)^l / l! · parts[l]."""
    parts: Tuple[QSeries, ...]

    def theta(self) -> "LogSeries":
        """θ((log z)^l/l! S) = (log z)^{l−1}/(l−1)! S + (log z)^l/l! θS."""
        out = []
        for l, part in enumerate(self.parts):
            value = part.euler_derivative()
            if l + 1 < len(self.parts):
                value = value.add(self.parts[l + 1])
            out.append(value)
        return LogSeries(tuple(out))

    def scale(self, c) -> "LogSeries":
        return LogSeries(tuple(p.scale(c) for p in self.parts))

    def add(self, other: "LogSeries") -> "LogSeries":
        n = max(len(self.parts), len(other.parts))
        out = []
        for l in range(n):
            if l >= len(self.parts):
                out.append(other.parts[l])
            elif l >= len(other.parts):
                out.append(self.parts[l])
            else:
                out.append(self.parts[l].add(other.parts[l]))
        return LogSeries(tuple(out))

    def shift(self) -> "LogSeries":
        """Multiplication by z."""
        return LogSeries(tuple(p.shift(1) for p in self.parts))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)


def picard_fuchs_apply(y: LogSeries) -> LogSeries:
    """L applied to a log-series."""
    theta4 = y.theta().theta().theta().theta()
    tail = y
    for j in range(1, 5):
        tail = tail.theta().scale(5).add(tail.scale(j))
    return theta4.add(tail.shift().scale(-5))


def picard_fuchs_residual(fb: FrobeniusBasis) -> List[Fraction]:
    """Largest |coefficient| of L(y_k) for k = 0..3; all zero for exact solutions."""
    residuals = []
    for k in range(4):
        image = picard_fuchs_apply(fb.solution(k))
        residuals.append(max((abs(c) for p in image.parts for c in p.coefficients),
                             default=Fraction(0)))
    return residuals


def y0_closed_form(n: int) -> int:
    """(5n)! / (n!)^5."""
    return factorial(5 * n) // factorial(n) ** 5
