"""
Poincaré duality on the lattice.

For a functional f on V_Z (a row vector in δ-coordinates) the Poincaré
dual is the lattice vector f^pd with ψ(u, f^pd) = f(u) for every lattice
vector u.  In δ-coordinates f^pd = Ψ₀⁻¹·fᵀ; all arithmetic is exact.
"""
from dataclasses import dataclass

import numpy as np
import sympy as sp

from src.hodge.frame import HodgeFrame, LatticePoint


@dataclass(frozen=True, eq=False)
class DualVector:
    """δ-coordinates of a Poincaré dual and, when a point is given, its ω-coordinates."""
    coordinates: sp.Matrix
    vector: np.ndarray = None

    @property
    def is_integral(self) -> bool:
        return all(c.is_integer for c in self.coordinates)


def dual_of_functional(frame: HodgeFrame, functional) -> sp.Matrix:
    """Column of δ-coordinates of the dual of a row-vector functional."""
    f = sp.Matrix(functional).reshape(1, frame.dimension)
    return frame.psi0_exact.inv() * f.T


def poincare_dual(x, delta_index: int) -> DualVector:
    """
    Dual δ_i^pd of the i-th dual-basis functional (1-based index).

    Args:
        x: LatticePoint, or a bare HodgeFrame when only coordinates are wanted
        delta_index: i in 1..h

    Returns:
        DualVector with integer δ-coordinates and ω-coordinates pᵀ·c
    """
    frame = x.frame if isinstance(x, LatticePoint) else x
    h = frame.dimension
    if not 1 <= delta_index <= h:
        raise IndexError(f"delta_index must be in 1..{h}")
    functional = sp.zeros(1, h)
    functional[0, delta_index - 1] = 1
    coords = dual_of_functional(frame, functional)
    vector = None
    if isinstance(x, LatticePoint):
        c = np.array(coords.evalf(), dtype=complex).reshape(h)
        vector = x.p.T @ c
    return DualVector(coords, vector)


def dual_polarization(frame: HodgeFrame) -> sp.Matrix:
    """[ψ^∨(δ_i, δ_j)] = [ψ(δ_i^pd, δ_j^pd)], which equals Ψ₀⁻ᵀ."""
    psi = frame.psi0_exact
    duals = psi.inv()
    return duals.T * psi * duals


def dual_polarization_is_integral(frame: HodgeFrame) -> bool:
    matrix = dual_polarization(frame)
    return all(v.is_integer for v in matrix) and abs(matrix.det()) == 1


# ---------------------------------------------------------- Γ_Z equivariance

def lattice_action(a: sp.Matrix, coordinates: sp.Matrix) -> sp.Matrix:
    """δ-coordinates transform as c ↦ Aᵀc under the basis change δ ↦ Aδ."""
    return sp.Matrix(a).T * coordinates


def dual_action(a: sp.Matrix, functional) -> sp.Matrix:
    """Pull back a functional along the lattice action: f ↦ f·Aᵀ."""
    a = sp.Matrix(a)
    return sp.Matrix(functional).reshape(1, a.shape[0]) * a.T


def equivariance_defect(frame: HodgeFrame, a: sp.Matrix, functional) -> sp.Matrix:
    """(A^∨ f)^pd − A⁻¹·f^pd, identically zero for A in Γ_Z."""
    a = sp.Matrix(a)
    lhs = dual_of_functional(frame, dual_action(a, functional))
    rhs = lattice_action(a.inv(), dual_of_functional(frame, functional))
    return sp.simplify(lhs - rhs)
