"""
Period-matrix identities and the Gauss–Manin connection along families.

    F = perᵀ·Ψ₀⁻ᵀ·per            (polarization in the ω-basis)
    G = perᵀ·Ψ₀⁻ᵀ·conj(per)
    A = d(perᵀ)·per⁻ᵀ             (connection matrix)

Derivatives along a PeriodPath are central finite differences with one
Richardson step, taken along real multiples of the tangent vector.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple, Union

import numpy as np
import sympy as sp

from src.base import PeriodPath
from src.config import get_config
from src.errors import SingularPeriod
from src.hodge.frame import HodgeFrame, LatticePoint, PeriodMatrix
from src.linalg import inverse_condition

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-10
TRANSVERSALITY_TOL = 1e-6
ODE_TOL = 1e-5
CONSTANCY_TOL = 1e-6
OUTER_STEP = 1e-3

MatrixLike = Union[np.ndarray, sp.Matrix]


# ---------------------------------------------------------- F and G

def _period_array(source) -> Tuple[np.ndarray, HodgeFrame]:
    if isinstance(source, LatticePoint):
        source = source.periods()
    if isinstance(source, PeriodMatrix):
        return source.per, source.frame
    raise TypeError(f"expected LatticePoint or PeriodMatrix, got {type(source).__name__}")


def f_matrix(per: MatrixLike, psi0: MatrixLike) -> MatrixLike:
    """
    perᵀ·Ψ₀⁻ᵀ·per, exact when ``per`` is a sympy Matrix.

    Raises:
        SingularPeriod: if per is singular
    """
    if isinstance(per, sp.MatrixBase):
        if per.det() == 0:
            raise SingularPeriod("period matrix is singular")
        psi = sp.Matrix(psi0)
        return (per.T * psi.inv().T * per).applyfunc(sp.simplify)
    per = np.asarray(per, dtype=complex)
    if inverse_condition(per) < SINGULAR_TOL:
        raise SingularPeriod("period matrix is numerically singular")
    psi_inv_t = np.linalg.inv(np.asarray(psi0, dtype=complex)).T
    return per.T @ psi_inv_t @ per


def g_matrix(per: np.ndarray, psi0: np.ndarray) -> np.ndarray:
    """perᵀ·Ψ₀⁻ᵀ·conj(per)."""
    per = np.asarray(per, dtype=complex)
    if inverse_condition(per) < SINGULAR_TOL:
        raise SingularPeriod("period matrix is numerically singular")
    psi_inv_t = np.linalg.inv(np.asarray(psi0, dtype=complex)).T
    return per.T @ psi_inv_t @ per.conj()


def F_matrix(P: PeriodMatrix) -> np.ndarray:
    per, frame = _period_array(P)
    return f_matrix(per, frame.psi0)


def G_matrix(x) -> np.ndarray:
    per, frame = _period_array(x)
    return g_matrix(per, frame.psi0)


# ---------------------------------------------------------- finite differences

def _step(t: np.ndarray) -> float:
    return get_config().fd_step * (1.0 + float(np.linalg.norm(t)))


def directional_derivative(fn: Callable[[np.ndarray], np.ndarray], t: np.ndarray,
                           v: np.ndarray, step: float = None) -> np.ndarray:
    """d/ds fn(t + s·v) at s = 0, central differences plus one Richardson level."""
    t = np.asarray(t, dtype=complex)
    v = np.asarray(v, dtype=complex)
    h = _step(t) if step is None else step

    def central(hh: float) -> np.ndarray:
        return (fn(t + hh * v) - fn(t - hh * v)) / (2 * hh)

    return (4 * central(h / 2) - central(h)) / 3


def _as_vector(value, dimension: int) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(value, dtype=complex))
    if arr.shape != (dimension,):
        raise ValueError(f"expected a vector of length {dimension}, got shape {arr.shape}")
    return arr


def connection_matrix(path: PeriodPath, t, v, step: float = None) -> np.ndarray:
    """
    A(v) = (d/ds perᵀ(t + s·v))·per(t)⁻ᵀ.

    Raises:
        SingularPeriod: when per(t) is numerically singular
    """
    t = _as_vector(t, path.dimension)
    v = _as_vector(v, path.dimension)
    per = path(t)
    if inverse_condition(per) < SINGULAR_TOL:
        raise SingularPeriod(f"period matrix singular at t = {t}")
    d_per_t = directional_derivative(lambda s: path(s).T, t, v, step)
    return d_per_t @ np.linalg.inv(per.T)


def integrability_residual(path: PeriodPath, t, u, v) -> float:
    """max |dA(u, v) − [A(u), A(v)]| with an outer difference step of 1e-3."""
    t = _as_vector(t, path.dimension)
    u = _as_vector(u, path.dimension)
    v = _as_vector(v, path.dimension)
    outer = OUTER_STEP * (1.0 + float(np.linalg.norm(t)))
    d_u_av = directional_derivative(lambda s: connection_matrix(path, s, v), t, u, outer)
    d_v_au = directional_derivative(lambda s: connection_matrix(path, s, u), t, v, outer)
    a_u = connection_matrix(path, t, u)
    a_v = connection_matrix(path, t, v)
    residual = (d_u_av - d_v_au) - (a_u @ a_v - a_v @ a_u)
    return float(np.max(np.abs(residual)))


def f_ode_residual(path: PeriodPath, t, v) -> float:
    """max |dF − (A·F + F·Aᵀ)| along v."""
    t = _as_vector(t, path.dimension)
    psi0 = path.frame.psi0
    d_f = directional_derivative(lambda s: f_matrix(path(s), psi0), t, v)
    a = connection_matrix(path, t, v)
    f = f_matrix(path(t), psi0)
    return float(np.max(np.abs(d_f - (a @ f + f @ a.T))))


def g_ode_residual(path: PeriodPath, t, v) -> float:
    """max |dG − (A·G + G·conj(A)ᵀ)| along v."""
    t = _as_vector(t, path.dimension)
    psi0 = path.frame.psi0
    d_g = directional_derivative(lambda s: g_matrix(path(s), psi0), t, v)
    a = connection_matrix(path, t, v)
    g = g_matrix(path(t), psi0)
    return float(np.max(np.abs(d_g - (a @ g + g @ a.conj().T))))


@dataclass(frozen=True)
class ConstancyResult:
    """Residuals of dF = 0 and A·Φ₀ + Φ₀·Aᵀ = 0 on paths inside U."""
    ok: bool
    df: float
    skew: float


def constancy_residual(path: PeriodPath, t, v) -> ConstancyResult:
    t = _as_vector(t, path.dimension)
    psi0 = path.frame.psi0
    phi0 = path.frame.phi0
    d_f = directional_derivative(lambda s: f_matrix(path(s), psi0), t, v)
    a = connection_matrix(path, t, v)
    df = float(np.max(np.abs(d_f)))
    skew = float(np.max(np.abs(a @ phi0 + phi0 @ a.T)))
    return ConstancyResult(df <= CONSTANCY_TOL and skew <= CONSTANCY_TOL, df, skew)


# ---------------------------------------------------------- transversality

def griffiths_pattern(frame: HodgeFrame) -> List[Tuple[int, int]]:
    """
    1-based entries (i, j) of A forced to vanish by Griffiths transversality:
    i ≤ h^{m-x} and j > h^{m-x-1} for x = 0..m-2.
    """
    m = frame.weight
    entries = set()
    for x in range(m - 1):
        rows = frame.filtration_dim(m - x)
        cols_from = frame.filtration_dim(m - x - 1)
        for i in range(1, rows + 1):
            for j in range(cols_from + 1, frame.dimension + 1):
                entries.add((i, j))
    return sorted(entries)


@dataclass(frozen=True)
class TransversalityResult:
    ok: bool
    max_violation: float
    offending: Tuple[Tuple[int, int, float], ...]


def transversality_check(path: PeriodPath, t, v,
                         tol: float = TRANSVERSALITY_TOL) -> TransversalityResult:
    a = connection_matrix(path, t, v)
    return transversality_of(a, path.frame, tol)


def transversality_of(a: np.ndarray, frame: HodgeFrame,
                      tol: float = TRANSVERSALITY_TOL) -> TransversalityResult:
    """Evaluate the Griffiths pattern on an already computed connection matrix."""
    offending = []
    worst = 0.0
    for i, j in griffiths_pattern(frame):
        value = float(abs(a[i - 1, j - 1]))
        worst = max(worst, value)
        if value > tol:
            offending.append((i, j, value))
    return TransversalityResult(not offending, worst, tuple(offending))
