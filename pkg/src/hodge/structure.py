"""
Conjugation, Hodge decomposition and the properties P1, P2, P3.

All routines take a LatticePoint x = (frame, p).  Vectors are column
vectors of ω-coordinates; the conjugation with respect to the lattice acts
as v ↦ M·conj(v).
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.config import get_config
from src.hodge.frame import LatticePoint
from src.linalg import intersect

logger = logging.getLogger(__name__)

P1_TOL = 1e-9
P3_REAL_TOL = 1e-9
P3_POSITIVE_TOL = 1e-9


@dataclass(frozen=True)
class P1Result:
    ok: bool
    residual: float


@dataclass(frozen=True)
class P2Result:
    ok: bool
    dimensions: Tuple[int, ...]
    expected: Tuple[int, ...]
    # pairs (i, j), i + j > m, where F^i meets conj(F^j)
    overlaps: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class P3Result:
    ok: bool
    # per component: (max anti-Hermitian part, eigenvalues of the Hermitian part)
    imaginary_residuals: Tuple[float, ...]
    spectra: Tuple[Tuple[float, ...], ...]

    @property
    def min_eigenvalue(self) -> float:
        values = [v for spectrum in self.spectra for v in spectrum]
        return min(values) if values else float("inf")


def _rtol() -> float:
    return get_config().svd_rtol


# ---------------------------------------------------------- conjugation

def conjugation(x: LatticePoint) -> np.ndarray:
    """
    Matrix M of the antilinear involution fixing the lattice.

    For v = pᵀa (a complex coefficients on the δ-basis) the conjugate is
    pᵀ·conj(a), hence M = pᵀ·conj(p)⁻ᵀ.
    """
    p = x.p
    return np.linalg.solve(p.conj(), p).T


def apply_conjugation(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    return m @ np.conj(v)


def filtration_basis(x: LatticePoint, i: int) -> np.ndarray:
    """Columns spanning F^i (the first h^i coordinate vectors)."""
    h = x.frame.dimension
    return np.eye(h, dtype=complex)[:, :x.frame.filtration_dim(i)]


def conjugate_filtration_basis(x: LatticePoint, i: int, m: np.ndarray = None) -> np.ndarray:
    if m is None:
        m = conjugation(x)
    return m[:, :x.frame.filtration_dim(i)]


# ---------------------------------------------------------- decomposition

def hodge_components(x: LatticePoint) -> List[np.ndarray]:
    """
    H^{i,m-i} = F^i ∩ conj(F^{m-i}) for i = 0..m.

    Returns:
        Orthonormal column bases, indexed like frame.hodge_numbers
    """
    m_weight = x.frame.weight
    conj = conjugation(x)
    rtol = _rtol()
    components = []
    for i in range(m_weight + 1):
        f_i = filtration_basis(x, i)
        conj_f = conjugate_filtration_basis(x, m_weight - i, conj)
        components.append(intersect(f_i, conj_f, rtol))
    logger.debug("hodge component dimensions %s", [c.shape[1] for c in components])
    return components


def polarization_matrix(x: LatticePoint) -> np.ndarray:
    """[ψ(ω_i, ω_j)] = p⁻¹·Ψ₀·p⁻ᵀ."""
    p_inv = np.linalg.inv(x.p)
    return p_inv @ x.frame.psi0.astype(complex) @ p_inv.T


# ---------------------------------------------------------- properties

def check_P1(x: LatticePoint) -> P1Result:
    """ψ(F^i, F^j) = 0 for i+j > m, realized as [ψ(ω_i, ω_j)] = Φ₀."""
    phi0 = x.frame.phi0
    residual = float(np.max(np.abs(polarization_matrix(x) - phi0)))
    scale = max(1.0, float(np.max(np.abs(phi0))))
    return P1Result(residual <= P1_TOL * scale, residual)


def check_P2(x: LatticePoint) -> P2Result:
    """V = ⊕ H^{i,m-i} and F^i ∩ conj(F^j) = 0 whenever i + j > m."""
    frame = x.frame
    components = hodge_components(x)
    dims = tuple(c.shape[1] for c in components)
    expected = frame.hodge_numbers

    conj = conjugation(x)
    rtol = _rtol()
    overlaps = []
    for i in range(1, frame.weight + 1):
        for j in range(1, frame.weight + 1):
            if i + j <= frame.weight:
                continue
            meet = intersect(filtration_basis(x, i), conjugate_filtration_basis(x, j, conj), rtol)
            if meet.shape[1]:
                overlaps.append((i, j))

    ok = sum(dims) == frame.dimension and dims == expected and not overlaps
    if not ok:
        logger.info("P2 fails: dimensions %s (expected %s), overlaps %s", dims, expected, overlaps)
    return P2Result(ok, dims, expected, tuple(overlaps))


def p3_sign(weight: int, i: int) -> complex:
    """(-1)^{m(m-1)/2 + i} · (√-1)^{-m}."""
    return (-1) ** (weight * (weight - 1) // 2 + i) * (1j) ** (-weight)


def check_P3(x: LatticePoint) -> P3Result:
    """Positivity of the Hermitian forms on each Hodge component."""
    frame = x.frame
    psi = polarization_matrix(x)
    conj = conjugation(x)
    imag_residuals, spectra = [], []
    ok = True
    for i, w in enumerate(hodge_components(x)):
        if w.shape[1] == 0:
            imag_residuals.append(0.0)
            spectra.append(())
            if frame.hodge_numbers[i]:
                ok = False
            continue
        form = p3_sign(frame.weight, i) * (w.T @ psi @ conj @ np.conj(w))
        hermitian = (form + form.conj().T) / 2
        anti = float(np.max(np.abs(form - form.conj().T))) / 2
        eigenvalues = tuple(float(v) for v in np.linalg.eigvalsh(hermitian))
        imag_residuals.append(anti)
        spectra.append(eigenvalues)
        if anti > P3_REAL_TOL or eigenvalues[0] <= P3_POSITIVE_TOL:
            ok = False
    return P3Result(ok, tuple(imag_residuals), tuple(spectra))


def check_all(x: LatticePoint) -> Tuple[P1Result, P2Result, P3Result]:
    return check_P1(x), check_P2(x), check_P3(x)
