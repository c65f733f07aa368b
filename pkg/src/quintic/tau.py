"""
The τ-coordinates of the mirror quintic and the 4x4 τ-matrix.

A TauSeries is a finite sum Σ τ₀^k · (2πi)^e · S_{k,e}(q) with q = e^{2πiτ₀};
it is stored as a map (k, e) -> QSeries.  Polynomials in τ₀ are the
special case of constant series at e = 0.  d/dτ₀ acts by

    d(τ₀^k S) = k τ₀^{k−1} S + τ₀^k θS,

and formal integration inverts it with integration constant 0.

τ₁ = −25/12 + (5/2)τ₀(τ₀ + 1) + (2πi)⁻² Σₙ (Σ_{d|n} n_d d³) qⁿ / n²,
τ₃ = dτ₁/dτ₀,   dτ₂/dτ₀ = τ₁ − τ₀τ₃,   d²τ₁/dτ₀² = Y.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple

import numpy as np
import sympy as sp

from src.hodge.connection import directional_derivative
from src.hodge.frame import HodgeFrame
from src.quintic.instantons import instanton_numbers, lambert_coefficients, yukawa
from src.series.qseries import QSeries

logger = logging.getLogger(__name__)

TAU1_CONSTANT = Fraction(-25, 12)
TAU1_QUADRATIC = Fraction(5, 2)
TAU_CONNECTION_TOL = 1e-6

# Displayed-connection entries that the Griffiths 1-forms annihilate (0-based).
GRIFFITHS_ENTRIES = ((0, 2), (0, 3), (1, 3))

Key = Tuple[int, int]


@dataclass(frozen=True)
class TauSeries:
    """Σ τ₀^k (2πi)^e S_{k,e}(q) at a common q-truncation."""
    terms: Dict[Key, QSeries] = field(default_factory=dict)
    truncation: int = 0

    @classmethod
    def polynomial(cls, coefficients, truncation: int) -> "TauSeries":
        """Σ c_k τ₀^k from a coefficient list."""
        terms = {
            (k, 0): QSeries.constant(Fraction(c), truncation)
            for k, c in enumerate(coefficients) if c
        }
        return cls(terms, truncation)

    @classmethod
    def from_series(cls, series: QSeries, power: int = 0) -> "TauSeries":
        return cls({(power, series.two_pi_i_power): series}, series.truncation)

    # ------------------------------------------------------ arithmetic

    def _normalized(self) -> Dict[Key, QSeries]:
        return {key: s for key, s in self.terms.items() if not s.is_zero()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, TauSeries):
            return NotImplemented
        return self._normalized() == other._normalized()

    def __hash__(self):
        return hash(tuple(sorted(self._normalized().items())))

    def add(self, other: "TauSeries") -> "TauSeries":
        truncation = min(self.truncation, other.truncation)
        terms = {key: s.truncate(truncation) for key, s in self.terms.items()}
        for key, s in other.terms.items():
            s = s.truncate(truncation)
            terms[key] = terms[key].add(s) if key in terms else s
        return TauSeries(terms, truncation)

    def scale(self, c) -> "TauSeries":
        return TauSeries({key: s.scale(c) for key, s in self.terms.items()}, self.truncation)

    def sub(self, other: "TauSeries") -> "TauSeries":
        return self.add(other.scale(-1))

    def times_tau0(self, power: int = 1) -> "TauSeries":
        return TauSeries({(k + power, e): s for (k, e), s in self.terms.items()}, self.truncation)

    # ------------------------------------------------------ calculus

    def derivative(self) -> "TauSeries":
        out = TauSeries({}, self.truncation)
        for (k, e), s in self.terms.items():
            if k:
                out = out.add(TauSeries({(k - 1, e): s.scale(k)}, self.truncation))
            d = s.theta_derivative()
            if not d.is_zero():
                out = out.add(TauSeries({(k, e + 1): d}, self.truncation))
        return out

    def integral(self) -> "TauSeries":
        """Antiderivative in τ₀ with no added constant."""
        out = TauSeries({}, self.truncation)
        for (k, e), s in self.terms.items():
            constant = QSeries.constant(s[0], self.truncation, e)
            if s[0]:
                out = out.add(TauSeries({(k + 1, e): constant.scale(Fraction(1, k + 1))},
                                        self.truncation))
            rest = s.sub(constant)
            if not rest.is_zero():
                out = out.add(_integrate_monomial(k, rest, self.truncation))
        return out

    # ------------------------------------------------------ inspection

    def polynomial_part(self) -> Dict[int, Fraction]:
        """Coefficients of τ₀^k in the constant terms at grade 0."""
        return {k: s[0] for (k, e), s in self.terms.items() if e == 0 and s[0]}

    def q_part(self, power: int = 0, grade: int = None) -> QSeries:
        """The q-series multiplying τ₀^power, without its constant term."""
        matches = [(e, s) for (k, e), s in self.terms.items()
                   if k == power and (grade is None or e == grade)]
        nonconstant = [(e, s.sub(QSeries.constant(s[0], s.truncation, e)))
                       for e, s in matches]
        nonconstant = [(e, s) for e, s in nonconstant if not s.is_zero()]
        if not nonconstant:
            return QSeries.zero(self.truncation, grade or 0)
        if len(nonconstant) > 1:
            raise ValueError(f"several grades multiply tau0^{power}; pass grade=")
        return nonconstant[0][1]

    def evaluate(self, tau0: complex) -> complex:
        """Numeric value at τ₀ (q = e^{2πiτ₀})."""
        tau0 = complex(tau0)
        total = 0j
        for (k, _), s in sorted(self.terms.items()):
            total += tau0 ** k * s(tau0)
        return total


def _integrate_monomial(k: int, s: QSeries, truncation: int) -> TauSeries:
    """∫ τ₀^k S = τ₀^k θ⁻¹S − k ∫ τ₀^{k−1} θ⁻¹S for S without constant term."""
    inner = s.theta_integral()
    result = TauSeries({(k, inner.two_pi_i_power): inner}, truncation)
    if k:
        result = result.sub(_integrate_monomial(k - 1, inner, truncation).scale(k))
    return result


# ---------------------------------------------------------- τ-series

def tau1_q_part(numbers, truncation: int) -> QSeries:
    """(2πi)⁻² Σₙ (Σ_{d|n} n_d d³) qⁿ / n²."""
    lambert = lambert_coefficients(list(numbers), truncation)
    coeffs = [Fraction(0)] + [Fraction(lambert[n], n * n) for n in range(1, truncation + 1)]
    return QSeries.from_coefficients(coeffs, truncation, -2)


def tau1_polynomial(truncation: int) -> TauSeries:
    """−25/12 + (5/2)τ₀(τ₀ + 1)."""
    return TauSeries.polynomial([TAU1_CONSTANT, TAU1_QUADRATIC, TAU1_QUADRATIC], truncation)


def tau1_series(numbers, truncation: int) -> TauSeries:
    """τ₁ as polynomial part plus grade −2 q-part."""
    return tau1_polynomial(truncation).add(TauSeries.from_series(tau1_q_part(numbers, truncation)))


def tau3_series(tau1: TauSeries) -> TauSeries:
    return tau1.derivative()


def tau2_series(tau1: TauSeries) -> TauSeries:
    """∫ (τ₁ − τ₀ τ₃) dτ₀ with integration constant 0."""
    return tau1.sub(tau1.derivative().times_tau0()).integral()


@dataclass(frozen=True)
class TauSolution:
    """The transversal τ-coordinates as functions of τ₀."""
    tau1: TauSeries
    tau2: TauSeries
    tau3: TauSeries
    yukawa: QSeries
    instanton_numbers: Tuple[int, ...]

    def at(self, tau0: complex) -> Tuple[complex, complex, complex, complex]:
        tau0 = complex(tau0)
        return (tau0, self.tau1.evaluate(tau0), self.tau2.evaluate(tau0), self.tau3.evaluate(tau0))


def transversal_solution(truncation: int) -> TauSolution:
    """Build τ₁, τ₂, τ₃ from the instanton numbers through q^truncation."""
    y = yukawa(truncation=truncation)
    numbers = instanton_numbers(y, truncation)
    tau1 = tau1_series(numbers, truncation)
    return TauSolution(tau1, tau2_series(tau1), tau3_series(tau1), y, tuple(numbers))


# ---------------------------------------------------------- τ-matrix

def tau_matrix(tau0, tau1, tau2, tau3, exact: bool = False):
    """
    Rows (τ₀, 1, 0, 0), (1, 0, 0, 0), (τ₁, τ₃, 1, 0), (τ₂, τ₁ − τ₀τ₃, −τ₀, 1).

    Returns a sympy Matrix when ``exact`` (entries may be rationals or
    symbols), a complex ndarray otherwise.
    """
    rows = [
        [tau0, 1, 0, 0],
        [1, 0, 0, 0],
        [tau1, tau3, 1, 0],
        [tau2, tau1 - tau0 * tau3, -tau0, 1],
    ]
    if exact:
        return sp.Matrix([[sp.nsimplify(v) if isinstance(v, (Fraction, int)) else v
                           for v in row] for row in rows])
    return np.array(rows, dtype=complex)


def displayed_connection(tau, dtau) -> np.ndarray:
    """Closed form of dτᵀ·τ⁻ᵀ at τ = (τ₀..τ₃) on the tangent dτ."""
    t0, t1, _, t3 = tau
    d0, d1, d2, d3 = dtau
    griffiths1 = -t3 * d0 + d1
    griffiths2 = -t1 * d0 + t0 * d1 + d2
    return np.array([
        [0, d0, griffiths1, griffiths2],
        [0, 0, d3, griffiths1],
        [0, 0, 0, -d0],
        [0, 0, 0, 0],
    ], dtype=complex)


def tau_inverse_transpose(tau0, tau1, tau2, tau3) -> np.ndarray:
    """Closed form of τ⁻ᵀ."""
    return np.array([
        [0, 1, -tau3, -tau1],
        [1, -tau0, -tau1 + tau0 * tau3, -tau2],
        [0, 0, 1, tau0],
        [0, 0, 0, 1],
    ], dtype=complex)


def griffiths_tangent(tau, free: complex = 0.0) -> np.ndarray:
    """A tangent (1, τ₃, τ₁ − τ₀τ₃, free) annihilated by both Griffiths 1-forms."""
    t0, t1, _, t3 = (complex(v) for v in tau)
    return np.array([1.0, t3, t1 - t0 * t3, free], dtype=complex)


# ---------------------------------------------------------- verification

@dataclass(frozen=True)
class OdeCheck:
    """Outcome of the exact transversality ODE checks."""
    yukawa_ok: bool
    tau2_ok: bool
    first_mismatch: Tuple[str, ...]
    solution: TauSolution

    @property
    def ok(self) -> bool:
        return self.yukawa_ok and self.tau2_ok


def _first_mismatch(left: TauSeries, right: TauSeries) -> str:
    a, b = left._normalized(), right._normalized()
    for key in sorted(set(a) | set(b)):
        sa = a.get(key)
        sb = b.get(key)
        if sa is None or sb is None:
            return f"tau0^{key[0]} (2pi i)^{key[1]}: present on one side only"
        for n, (x, y) in enumerate(zip(sa.coefficients, sb.coefficients)):
            if x != y:
                return f"tau0^{key[0]} (2pi i)^{key[1]} q^{n}: {x} != {y}"
    return ""


def verify_transversality_odes(truncation: int, solution: TauSolution = None) -> OdeCheck:
    """
    Check d²τ₁/dτ₀² = Y and dτ₂/dτ₀ = τ₁ − τ₀τ₃ exactly through q^N.
    """
    if solution is None:
        solution = transversal_solution(truncation)
    yukawa_side = TauSeries.from_series(solution.yukawa)
    second = solution.tau3.derivative()
    tau2_rhs = solution.tau1.sub(solution.tau3.times_tau0())
    mismatches = tuple(m for m in (
        _first_mismatch(second, yukawa_side),
        _first_mismatch(solution.tau2.derivative(), tau2_rhs),
    ) if m)
    yukawa_ok = second == yukawa_side
    tau2_ok = solution.tau2.derivative() == tau2_rhs
    if not (yukawa_ok and tau2_ok):
        logger.warning("transversality ODE mismatch: %s", "; ".join(mismatches))
    return OdeCheck(yukawa_ok, tau2_ok, mismatches, solution)


@dataclass(frozen=True)
class TauMatrixCheck:
    """Residuals of the τ-matrix identities."""
    symbolic_ok: bool
    rational_failures: int
    connection_residual: float
    griffiths_residual: float
    griffiths_nonzero: float

    @property
    def ok(self) -> bool:
        return (self.symbolic_ok and self.rational_failures == 0
                and self.connection_residual <= TAU_CONNECTION_TOL
                and self.griffiths_residual <= TAU_CONNECTION_TOL)


def polarization_identity(tau0, tau1, tau2, tau3, frame: HodgeFrame = None) -> sp.Matrix:
    """τᵀ·Ψ₀⁻ᵀ·τ − Φ₀ in exact arithmetic."""
    frame = frame or HodgeFrame.quintic()
    tau = tau_matrix(tau0, tau1, tau2, tau3, exact=True)
    phi0 = sp.Matrix(frame.phi0.real.astype(int).tolist())
    return (tau.T * frame.psi0_exact.inv().T * tau - phi0).applyfunc(sp.expand)


def _random_rational(rng: np.random.Generator) -> sp.Rational:
    return sp.Rational(int(rng.integers(-50, 51)), int(rng.integers(1, 20)))


def _random_point(rng: np.random.Generator) -> np.ndarray:
    values = rng.normal(size=8)
    point = values[:4] + 1j * values[4:]
    point[0] = complex(point[0].real, 1.0 + abs(point[0].imag))
    return point


def verify_tau_matrix(rng: np.random.Generator, trials: int = 20,
                      mode: str = "all") -> TauMatrixCheck:
    """
    τ-matrix identities.

    ``mode`` is ``symbolic`` (exact polarization identity, symbolically and
    at random rational points), ``numeric`` (finite-difference connection
    against its closed form, Griffiths zero pattern) or ``all``.
    """
    symbolic_ok, failures = True, 0
    connection, griffiths, nonzero = 0.0, 0.0, float("inf")

    if mode in ("symbolic", "all"):
        symbols = sp.symbols("tau0:4")
        symbolic_ok = polarization_identity(*symbols).is_zero_matrix
        for _ in range(trials):
            values = [_random_rational(rng) for _ in range(4)]
            if not polarization_identity(*values).is_zero_matrix:
                failures += 1

    if mode in ("numeric", "all"):
        for _ in range(trials):
            t = _random_point(rng)
            v = rng.normal(size=4) + 1j * rng.normal(size=4)
            d_tau_t = directional_derivative(lambda s: tau_matrix(*s).T, t, v)
            numeric = d_tau_t @ tau_inverse_transpose(*t)
            connection = max(connection, float(np.max(np.abs(numeric - displayed_connection(t, v)))))

            w = griffiths_tangent(t, free=complex(rng.normal(), rng.normal()))
            d_tau_t = directional_derivative(lambda s: tau_matrix(*s).T, t, w)
            a = d_tau_t @ tau_inverse_transpose(*t)
            griffiths = max(griffiths, max(abs(a[i, j]) for i, j in GRIFFITHS_ENTRIES))
            nonzero = min(nonzero, abs(a[0, 1]))

    result = TauMatrixCheck(symbolic_ok, failures, connection, griffiths, nonzero)
    logger.debug("tau-matrix check: %s", result)
    return result
