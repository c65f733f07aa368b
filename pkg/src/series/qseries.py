"""
Exact truncated power series in q with a tracked power of (2πi).

A QSeries with coefficients c_0..c_N and grade e stands for
(2πi)^e · Σ c_n q^n modulo q^{N+1}.  Coefficients are Fractions; the
transcendental factor is only realized by ``evaluate``.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, NamedTuple, Sequence, Union

import mpmath
from sympy.polys.domains import QQ
from sympy.polys.ring_series import (
    rs_exp,
    rs_log,
    rs_mul,
    rs_pow,
    rs_series_inversion,
    rs_series_reversion,
    rs_subs,
)
from sympy.polys.rings import ring

from src.base import ComplexValue
from src.config import get_config
from src.errors import (
    DomainError,
    MixedGradeError,
    NonAdmissibleError,
    NonUnitError,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class Evaluation(NamedTuple):
    """Numeric value of a series at a point plus a crude tail bound."""
    value: ComplexValue
    tail_bound: float


# ---------------------------------------------------------- ring bridge

# Univariate series ring over QQ; the second ring carries the output
# variable of series reversion.
SERIES_RING, RING_Q = ring("q", QQ)
REVERSION_RING, REV_Q, REV_W = ring("q, w", QQ)


def to_ring(coefficients: Sequence[Fraction], target=SERIES_RING):
    """Polynomial in the first generator of ``target`` with the given coefficients."""
    ngens = target.ngens
    terms = {(n,) + (0,) * (ngens - 1): QQ(c.numerator, c.denominator)
             for n, c in enumerate(coefficients) if c}
    return target.from_dict(terms)


def from_ring(poly, length: int, index: int = 0) -> List[Fraction]:
    """First ``length`` coefficients of ``poly`` in its generator ``index``."""
    out = [Fraction(0)] * length
    for monom, coeff in poly.items():
        n = monom[index]
        if n < length:
            out[n] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return out


def multiply_coefficients(a: Sequence[Fraction], b: Sequence[Fraction], limit: int) -> List[Fraction]:
    """Truncated Cauchy product modulo q^limit."""
    product = rs_mul(to_ring(a[:limit]), to_ring(b[:limit]), RING_Q, limit)
    return from_ring(product, limit)


# ---------------------------------------------------------- the series type

@dataclass(frozen=True, eq=False)
class QSeries:
    """
    Truncated q-series (2πi)^e · Σ_{n≤N} c_n q^n with Fraction coefficients.

    Instances are immutable.  Arithmetic carries the minimum truncation of
    its operands and never pads.
    """
    coefficients: tuple
    two_pi_i_power: int = 0

    def __post_init__(self):
        coeffs = tuple(_as_fraction(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("a QSeries needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "two_pi_i_power", int(self.two_pi_i_power))

    # ------------------------------------------------------ constructors

    @classmethod
    def from_coefficients(cls, coefficients: Iterable, truncation: int = None,
                          two_pi_i_power: int = 0) -> "QSeries":
        """
        Build a series, padding with zeros or cutting to ``truncation``.

        Args:
            coefficients: Leading coefficients c_0, c_1, ...
            truncation: N; defaults to len(coefficients) - 1
            two_pi_i_power: Grade e

        Returns:
            QSeries with exactly N+1 coefficients
        """
        coeffs = [_as_fraction(c) for c in coefficients]
        if truncation is None:
            truncation = len(coeffs) - 1
        if truncation < 0:
            raise ValueError("truncation must be non-negative")
        coeffs = coeffs[:truncation + 1]
        coeffs += [Fraction(0)] * (truncation + 1 - len(coeffs))
        return cls(tuple(coeffs), two_pi_i_power)

    @classmethod
    def zero(cls, truncation: int, two_pi_i_power: int = 0) -> "QSeries":
        return cls((Fraction(0),) * (truncation + 1), two_pi_i_power)

    @classmethod
    def constant(cls, value: Scalar, truncation: int, two_pi_i_power: int = 0) -> "QSeries":
        return cls.from_coefficients([value], truncation, two_pi_i_power)

    @classmethod
    def one(cls, truncation: int) -> "QSeries":
        return cls.constant(1, truncation)

    @classmethod
    def monomial(cls, degree: int, truncation: int, coefficient: Scalar = 1,
                 two_pi_i_power: int = 0) -> "QSeries":
        coeffs = [Fraction(0)] * (truncation + 1)
        if degree <= truncation:
            coeffs[degree] = _as_fraction(coefficient)
        return cls(tuple(coeffs), two_pi_i_power)

    # ------------------------------------------------------ accessors

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    @property
    def grade(self) -> int:
        return self.two_pi_i_power

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.coefficients != other.coefficients:
            return False
        return self.is_zero() or self.two_pi_i_power == other.two_pi_i_power

    def __hash__(self) -> int:
        grade = 0 if self.is_zero() else self.two_pi_i_power
        return hash((self.coefficients, grade))

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coefficients[:6])
        more = ", ..." if len(self.coefficients) > 6 else ""
        return f"QSeries(e={self.two_pi_i_power}, N={self.truncation}, [{shown}{more}])"

    # ------------------------------------------------------ ring operations

    def _aligned_grade(self, other: "QSeries") -> int:
        if self.is_zero():
            return other.two_pi_i_power
        if other.is_zero() or self.two_pi_i_power == other.two_pi_i_power:
            return self.two_pi_i_power
        raise MixedGradeError(
            f"cannot add series of grades {self.two_pi_i_power} and {other.two_pi_i_power}"
        )

    def add(self, other: "QSeries") -> "QSeries":
        grade = self._aligned_grade(other)
        n = min(self.truncation, other.truncation) + 1
        coeffs = tuple(a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n]))
        return QSeries(coeffs, grade)

    def neg(self) -> "QSeries":
        return QSeries(tuple(-c for c in self.coefficients), self.two_pi_i_power)

    def sub(self, other: "QSeries") -> "QSeries":
        return self.add(other.neg())

    def scale(self, factor: Scalar) -> "QSeries":
        factor = _as_fraction(factor)
        return QSeries(tuple(factor * c for c in self.coefficients), self.two_pi_i_power)

    def mul(self, other: "QSeries") -> "QSeries":
        limit = min(self.truncation, other.truncation) + 1
        coeffs = multiply_coefficients(self.coefficients, other.coefficients, limit)
        return QSeries(tuple(coeffs), self.two_pi_i_power + other.two_pi_i_power)

    def power(self, k: int) -> "QSeries":
        """Integer power; negative exponents go through invert."""
        if k < 0:
            return self.invert().power(-k)
        if k == 0:
            return QSeries.one(self.truncation)
        limit = self.truncation + 1
        powered = rs_pow(to_ring(self.coefficients), k, RING_Q, limit)
        return QSeries(tuple(from_ring(powered, limit)), k * self.two_pi_i_power)

    __add__ = add
    __sub__ = sub
    __neg__ = neg

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return self.mul(other)
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "QSeries":
        return self.power(k)

    # ------------------------------------------------------ structural

    def truncate(self, truncation: int) -> "QSeries":
        if truncation > self.truncation:
            raise ValueError(f"cannot extend truncation {self.truncation} to {truncation}")
        return QSeries(self.coefficients[:truncation + 1], self.two_pi_i_power)

    def regrade(self, two_pi_i_power: int) -> "QSeries":
        return QSeries(self.coefficients, two_pi_i_power)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (k >= 0) at the same truncation."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        n = self.truncation + 1
        coeffs = ((Fraction(0),) * k + self.coefficients)[:n]
        return QSeries(coeffs, self.two_pi_i_power)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (truncation + 1 for zero)."""
        for n, c in enumerate(self.coefficients):
            if c:
                return n
        return len(self.coefficients)

    # ------------------------------------------------------ derivations

    def euler_derivative(self) -> "QSeries":
        """q d/dq, grade unchanged."""
        return QSeries(tuple(n * c for n, c in enumerate(self.coefficients)), self.two_pi_i_power)

    def theta_derivative(self) -> "QSeries":
        """(2πi)·q d/dq = d/dτ; raises the grade by one."""
        return self.euler_derivative().regrade(self.two_pi_i_power + 1)

    def theta_integral(self) -> "QSeries":
        """Inverse of theta_derivative on series without constant term."""
        if self.coefficients[0]:
            raise NonAdmissibleError("theta_integral needs a zero constant term")
        coeffs = (Fraction(0),) + tuple(c / n for n, c in enumerate(self.coefficients) if n)
        return QSeries(coeffs, self.two_pi_i_power - 1)

    # ------------------------------------------------------ transcendental ops

    def invert(self) -> "QSeries":
        if not self.coefficients[0]:
            raise NonUnitError("cannot invert a series with zero constant term")
        limit = self.truncation + 1
        inverse = rs_series_inversion(to_ring(self.coefficients), RING_Q, limit)
        return QSeries(tuple(from_ring(inverse, limit)), -self.two_pi_i_power)

    def exp(self) -> "QSeries":
        if self.two_pi_i_power != 0 and not self.is_zero():
            raise NonAdmissibleError("exp needs a grade-0 series")
        if self.coefficients[0]:
            raise NonAdmissibleError("exp needs a zero constant term")
        if self.is_zero():
            return QSeries.one(self.truncation)
        limit = self.truncation + 1
        result = rs_exp(to_ring(self.coefficients), RING_Q, limit)
        return QSeries(tuple(from_ring(result, limit)), 0)

    def log(self) -> "QSeries":
        if self.two_pi_i_power != 0:
            raise NonAdmissibleError("log needs a grade-0 series")
        if self.coefficients[0] != 1:
            raise NonAdmissibleError("log needs constant term 1")
        limit = self.truncation + 1
        result = rs_log(to_ring(self.coefficients), RING_Q, limit)
        return QSeries(tuple(from_ring(result, limit)), 0)

    def compose(self, inner: "QSeries") -> "QSeries":
        """f(g) for g without constant term."""
        if inner.coefficients[0]:
            raise NonAdmissibleError("inner series must have zero constant term")
        if inner.two_pi_i_power != 0 and not inner.is_zero():
            raise NonAdmissibleError("inner series must have grade 0")
        limit = min(self.truncation, inner.truncation) + 1
        outer = to_ring(self.coefficients[:limit])
        result = rs_subs(outer, {RING_Q: to_ring(inner.coefficients[:limit])}, RING_Q, limit)
        return QSeries(tuple(from_ring(result, limit)), self.two_pi_i_power)

    def revert(self) -> "QSeries":
        """Compositional inverse g with g(f(q)) = f(g(q)) = q."""
        if self.two_pi_i_power != 0:
            raise NonAdmissibleError("revert needs a grade-0 series")
        c = self.coefficients
        if c[0]:
            raise NonAdmissibleError("revert needs a zero constant term")
        limit = self.truncation + 1
        if limit < 2 or not c[1]:
            raise NonAdmissibleError("revert needs a nonzero linear coefficient")
        forward = to_ring(c, REVERSION_RING)
        backward = rs_series_reversion(forward, REV_Q, limit, REV_W)
        logger.debug("reverted series to order %d", self.truncation)
        return QSeries(tuple(from_ring(backward, limit, index=1)), 0)

    # ------------------------------------------------------ numeric bridge

    def evaluate(self, tau) -> Evaluation:
        """
        Substitute q = exp(2πiτ) and realize the (2πi)^e factor.

        Terms are summed in mpmath at the configured precision, so exact
        coefficients beyond the double range still evaluate when c_n q^n is
        small.

        Args:
            tau: Point in the upper half-plane (complex or ComplexValue)

        Returns:
            Evaluation with the value and the bound |c_N| |q|^{N+1} / (1 - |q|)

        Raises:
            DomainError: if Im(τ) <= 0, if 1 - |q| vanishes at working
                precision, or if the value leaves the double range
        """
        if isinstance(tau, ComplexValue):
            tau = tau.to_complex()
        tau = complex(tau)
        if tau.imag <= 0:
            raise DomainError(f"Im(tau) must be positive, got {tau.imag}")

        with mpmath.workdps(get_config().mp_dps):
            two_pi_i = 2j * mpmath.pi
            q = mpmath.exp(two_pi_i * mpmath.mpc(tau))
            terms = []
            qn = mpmath.mpc(1)
            for c in self.coefficients:
                if c:
                    terms.append(_exact_mpf(c) * qn)
                qn *= q
            total = mpmath.fsum(terms) * two_pi_i ** self.two_pi_i_power

            gap = 1 - abs(q)
            if gap <= 0:
                raise DomainError(f"|q| rounds to 1 at tau={tau}; Im(tau) is too small")
            tail = (abs(_exact_mpf(self.coefficients[-1])) * abs(q) ** (self.truncation + 1)
                    / gap * (2 * mpmath.pi) ** self.two_pi_i_power)
            value = complex(total)

        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise DomainError(f"series value at tau={tau} exceeds the double range")
        return Evaluation(ComplexValue.from_complex(value), float(tail))

    def __call__(self, tau) -> complex:
        return self.evaluate(tau).value.to_complex()


def _exact_mpf(c: Fraction):
    return mpmath.mpf(c.numerator) / c.denominator


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact coefficient expected, got {type(value).__name__}")
