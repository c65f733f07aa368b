"""
Periods of the Weierstrass family

    E_t :  y² = 4(x − t1)³ − t2(x − t1) − t3,    27 t3² − t2³ ≠ 0.

For two cycles δ1, δ2 the normalized period matrix is

    per(t) = (−2πi)^{-1/2} · [[∫δ1 dx/y, ∫δ1 x dx/y], [∫δ2 dx/y, ∫δ2 x dx/y]].

Each cycle encircles a segment between two roots of 4X³ − t2X − t3
(X = x − t1).  Along a segment the integrals reduce to the Carlson forms
R_F(0, r, 1) and R_D(0, r, 1), evaluated with mpmath.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import mpmath
import numpy as np

from src.config import get_config
from src.errors import DiscriminantZero, RootFindingFailure
from src.groups.actions import (
    G0Pair,
    discriminant,
    elliptic_g0_matrix,
    elliptic_parameter_action,
    gamma_membership,
)
from src.hodge.frame import HodgeFrame, PeriodMatrix

logger = logging.getLogger(__name__)

LEGENDRE_TOL = 1e-9
EQUIVARIANCE_TOL = 1e-8
NORMALIZATION = 1 / cmath.sqrt(-2j * math.pi)


@dataclass(frozen=True)
class EllipticParameters:
    """A point t = (t1, t2, t3) off the discriminant locus."""
    t1: complex
    t2: complex
    t3: complex

    def __post_init__(self):
        for name in ("t1", "t2", "t3"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.discriminant == 0:
            raise DiscriminantZero(f"27 t3^2 - t2^3 = 0 at {self.as_tuple()}")

    @property
    def discriminant(self) -> complex:
        return discriminant(self.as_tuple())

    def as_tuple(self) -> Tuple[complex, complex, complex]:
        return (self.t1, self.t2, self.t3)


@dataclass(frozen=True, eq=False)
class EllipticPeriods:
    """Normalized period matrix plus the data used to build it."""
    per: np.ndarray
    roots: Tuple[complex, complex, complex]
    legendre_residual: float

    @property
    def ratio(self) -> complex:
        return complex(self.per[0, 0] / self.per[1, 0])

    @property
    def flagged(self) -> bool:
        return not self.legendre_residual < LEGENDRE_TOL


def weierstrass_roots(t2: complex, t3: complex) -> Tuple[complex, complex, complex]:
    """
    Roots of 4X³ − t2·X − t3.

    Raises:
        RootFindingFailure: when the polynomial solver does not converge
    """
    with mpmath.workdps(get_config().mp_dps):
        try:
            roots = mpmath.polyroots([4, 0, -mpmath.mpc(t2), -mpmath.mpc(t3)],
                                     maxsteps=200, extraprec=60)
        except mpmath.NoConvergence as exc:
            raise RootFindingFailure(f"cubic roots did not converge for t2={t2}, t3={t3}") from exc
        return tuple(mpmath.mpc(r) for r in roots)


def _order_roots(roots):
    """
    Pick (e_a, e_b, e_c) with e_b the root minimizing |e_a − e_b| + |e_b − e_c|.

    With that choice neither segment [e_a, e_b] nor [e_b, e_c] contains the
    third root.
    """
    best = None
    for b in range(3):
        others = sorted((r for i, r in enumerate(roots) if i != b),
                        key=lambda z: (float(z.real), float(z.imag)))
        cost = abs(others[0] - roots[b]) + abs(roots[b] - others[1])
        if best is None or cost < best[0]:
            best = (cost, others[0], roots[b], others[1])
    return best[1], best[2], best[3]


def _segment_integrals(u, v, w):
    """
    Periods of dX/y and X dX/y over the cycle around [u, v]; w is the third root.

    Up to a common sign:
        Ω = 2sK,  H = s(2uK + (2/3)(v − u)D)
    with α = u − w, r = (v − w)/α, s = i/√α, K = R_F(0, r, 1), D = R_D(0, r, 1).
    """
    alpha = u - w
    r = (v - w) / alpha
    s = mpmath.mpc(0, 1) / mpmath.sqrt(alpha)
    k_int = mpmath.elliprf(0, r, 1)
    d_int = mpmath.elliprd(0, r, 1)
    omega = 2 * s * k_int
    eta = s * (2 * u * k_int + mpmath.mpf(2) / 3 * (v - u) * d_int)
    return omega, eta


def period_data(t: EllipticParameters) -> EllipticPeriods:
    """
    Normalized periods with the consistency gate attached.

    The rows are ordered so that Im(x1/x3) > 0; the Legendre relation then
    forces det(per) = 1 and |det − 1| is reported as legendre_residual.
    """
    with mpmath.workdps(get_config().mp_dps):
        roots = weierstrass_roots(t.t2, t.t3)
        e_a, e_b, e_c = _order_roots(roots)
        omega1, eta1 = _segment_integrals(e_a, e_b, e_c)
        omega2, eta2 = _segment_integrals(e_b, e_c, e_a)

        t1 = mpmath.mpc(t.t1)
        rows = [
            [complex(omega1), complex(eta1 + t1 * omega1)],
            [complex(omega2), complex(eta2 + t1 * omega2)],
        ]

    per = NORMALIZATION * np.array(rows, dtype=complex)
    if (per[0, 0] / per[1, 0]).imag < 0:
        per = per[::-1].copy()
    residual = float(abs(np.linalg.det(per) - 1))
    result = EllipticPeriods(per, tuple(complex(r) for r in roots), residual)
    if result.flagged:
        logger.warning("Legendre gate: |det - 1| = %.3e at t = %s", residual, t.as_tuple())
    return result


def periods(t: EllipticParameters) -> PeriodMatrix:
    """The normalized period matrix as a PeriodMatrix of the elliptic frame."""
    return PeriodMatrix(HodgeFrame.elliptic(), period_data(t).per)


def g0_equivariance_residual(t: EllipticParameters, g: G0Pair) -> float:
    """
    Distance of per(t•g)·(per(t)·g̃)⁻¹ from Γ_Z.

    The periods of E_{t•g} are those of E_t moved right by g̃ = [[k, k'], [0, 1/k]],
    up to the choice of cycles, i.e. up to a left factor in Γ_Z.  Returns
    inf when the nearest integer matrix is not in Γ_Z.
    """
    moved = EllipticParameters(*elliptic_parameter_action(t.as_tuple(), g))
    source = period_data(t).per @ elliptic_g0_matrix(*g)
    a = period_data(moved).per @ np.linalg.inv(source)
    nearest = np.round(a.real)
    if not gamma_membership(nearest, HodgeFrame.elliptic()):
        return float("inf")
    return float(np.max(np.abs(a - nearest)))


def j_from_parameters(t) -> complex:
    """
    j = 1728 t2³ / (t2³ − 27 t3²); exact for Fraction inputs.

    Raises:
        DiscriminantZero: on the discriminant locus
    """
    if isinstance(t, EllipticParameters):
        t = t.as_tuple()
    _, t2, t3 = t
    denominator = t2 ** 3 - 27 * t3 ** 2
    if denominator == 0:
        raise DiscriminantZero("27 t3^2 - t2^3 = 0")
    return 1728 * t2 ** 3 / denominator
