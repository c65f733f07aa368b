"""
Mirror map, Yukawa coupling and genus-zero instanton numbers of the
mirror quintic.

    q(z) = z·exp(A_1 / y0),    z(q) = its compositional inverse,
    Y    = 5 / ((1 − 5⁵z) · y0² · (1 + θ(A_1/y0))³)   expressed in q,

normalized so that Y(0) = 5, and Y = 5 + Σ_d n_d d³ q^d / (1 − q^d).
"""
import logging
from fractions import Fraction
from typing import List, NamedTuple

from src.errors import NonIntegralInstanton
from src.quintic.frobenius import FrobeniusBasis, picard_fuchs_solve
from src.series.qseries import QSeries

logger = logging.getLogger(__name__)

YUKAWA_CONSTANT = 5
CONIFOLD = 5 ** 5


class MirrorMap(NamedTuple):
    q_of_z: QSeries
    z_of_q: QSeries


def mirror_map(fb: FrobeniusBasis) -> MirrorMap:
    """q(z) = z·exp(ỹ1/y0) and its reversion z(q)."""
    ratio = fb.log_parts[0].mul(fb.y0.invert())
    q_of_z = ratio.exp().shift(1)
    z_of_q = q_of_z.revert()
    logger.debug("mirror map: q = z + %s z^2 + ...", q_of_z[2] if q_of_z.truncation >= 2 else "?")
    return MirrorMap(q_of_z, z_of_q)


def yukawa_in_z(fb: FrobeniusBasis) -> QSeries:
    """5 / ((1 − 5⁵z) y0² (1 + θ(ỹ1/y0))³) as a series in z."""
    n = fb.truncation
    ratio = fb.log_parts[0].mul(fb.y0.invert())
    jacobian = QSeries.one(n).add(ratio.euler_derivative())
    conifold = QSeries.from_coefficients([1, -CONIFOLD], n)
    denominator = conifold.mul(fb.y0.power(2)).mul(jacobian.power(3))
    return denominator.invert().scale(YUKAWA_CONSTANT)


def yukawa(fb: FrobeniusBasis = None, truncation: int = None) -> QSeries:
    """
    Yukawa coupling as a q-series.

    Args:
        fb: Frobenius basis; solved to ``truncation`` when omitted
        truncation: order of the result (defaults to fb's)
    """
    if fb is None:
        if truncation is None:
            raise ValueError("need a Frobenius basis or a truncation")
        fb = picard_fuchs_solve(truncation)
    if truncation is not None and truncation < fb.truncation:
        fb = FrobeniusBasis(fb.y0.truncate(truncation),
                            tuple(p.truncate(truncation) for p in fb.log_parts))
    z_of_q = mirror_map(fb).z_of_q
    return yukawa_in_z(fb).compose(z_of_q)


def instanton_numbers(y: QSeries, degree: int) -> List[int]:
    """
    Peel n_1..n_D off Y = 5 + Σ_d n_d d³ q^d/(1 − q^d).

    Raises:
        NonIntegralInstanton: when some n_d is not an integer
        ValueError: when Y is known to lower order than ``degree``
    """
    if y.truncation < degree:
        raise ValueError(f"Yukawa series known to q^{y.truncation}, need q^{degree}")
    numbers: List[int] = []
    for n in range(1, degree + 1):
        value = y[n] - sum(Fraction(numbers[d - 1] * d ** 3)
                           for d in range(1, n) if n % d == 0)
        value /= n ** 3
        if value.denominator != 1:
            raise NonIntegralInstanton(f"n_{n} = {value} is not an integer")
        numbers.append(int(value))
    return numbers


def lambert_coefficients(numbers: List[int], truncation: int) -> List[int]:
    """[qⁿ] Σ_d n_d d³ q^d/(1 − q^d) = Σ_{d|n} n_d d³ for n = 0..N (entry 0 is 0)."""
    out = [0] * (truncation + 1)
    for d, n_d in enumerate(numbers, start=1):
        for multiple in range(d, truncation + 1, d):
            out[multiple] += n_d * d ** 3
    return out
