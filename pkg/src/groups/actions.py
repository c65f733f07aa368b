"""
The groups Γ_Z (integral isometries of Ψ₀) and G₀ (isometries of Φ₀
preserving the filtration), their actions on period matrices, and the
action of G₀ on the parameters of the elliptic family.

Γ_Z acts from the left (per ↦ A·per), G₀ from the right (per ↦ per·g).
"""
import logging
from fractions import Fraction
from numbers import Number
from typing import Tuple

import mpmath
import numpy as np
import sympy as sp

from src.errors import DimensionMismatch, DiscriminantZero, NotAMember, ZeroScaling
from src.hodge.frame import HodgeFrame, PeriodMatrix
from src.linalg import integer_matrix, null_space

logger = logging.getLogger(__name__)

G0_TOL = 1e-12

Parameters = Tuple[Number, Number, Number]
G0Pair = Tuple[Number, Number]


# ---------------------------------------------------------- membership

def _check_square(matrix, frame: HodgeFrame):
    h = frame.dimension
    if tuple(np.shape(matrix)) != (h, h):
        raise DimensionMismatch(f"matrix has shape {np.shape(matrix)}, frame needs {h}x{h}")


def gamma_membership(a, frame: HodgeFrame) -> bool:
    """A·Ψ₀·Aᵀ = Ψ₀ exactly for an integer matrix A (det A = ±1 is checked too)."""
    _check_square(a, frame)
    if isinstance(a, sp.MatrixBase):
        exact = a
        if not all(v.is_integer for v in exact):
            return False
    else:
        try:
            exact = integer_matrix(a)
        except ValueError:
            return False
    psi = frame.psi0_exact
    if exact * psi * exact.T != psi:
        return False
    return abs(exact.det()) == 1


def g0_membership(g, frame: HodgeFrame, tol: float = G0_TOL) -> bool:
    """gᵀ·Φ₀·g = Φ₀ and g(F^i) ⊂ F^i, within tol·max(1, |g|²)."""
    _check_square(g, frame)
    g = np.asarray(g, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(g))) ** 2)
    phi0 = frame.phi0
    if np.max(np.abs(g.T @ phi0 @ g - phi0)) > tol * scale:
        return False
    for i in range(1, frame.weight + 1):
        k = frame.filtration_dim(i)
        block = g[k:, :k]
        if block.size and np.max(np.abs(block)) > tol * max(1.0, scale ** 0.5):
            return False
    return True


# ---------------------------------------------------------- actions

def act_left(a, P: PeriodMatrix) -> PeriodMatrix:
    """A·per for A in Γ_Z."""
    if not gamma_membership(a, P.frame):
        raise NotAMember("matrix is not in Γ_Z for this frame")
    a = np.array(sp.Matrix(a).evalf() if isinstance(a, sp.MatrixBase) else a, dtype=complex)
    return P.act_left(a)


def act_right(P: PeriodMatrix, g) -> PeriodMatrix:
    """per·g for g in G₀."""
    if not g0_membership(g, P.frame):
        raise NotAMember("matrix is not in G0 for this frame")
    return P.act_right(np.asarray(g, dtype=complex))


def gamma_inverse(a) -> sp.Matrix:
    return sp.Matrix(a).inv()


# ---------------------------------------------------------- random elements

def standard_symplectic(genus: int) -> sp.Matrix:
    eye = sp.eye(genus)
    zero = sp.zeros(genus, genus)
    return _blocks(zero, -eye, eye, zero)


def _blocks(a, b, c, d) -> sp.Matrix:
    return sp.Matrix.vstack(sp.Matrix.hstack(a, b), sp.Matrix.hstack(c, d))


def random_gamma(frame: HodgeFrame, rng: np.random.Generator, length: int = 4) -> sp.Matrix:
    """
    Random element of Γ_Z as a short word in symplectic generators.

    Only available when Ψ₀ is ± the standard symplectic form.
    """
    h = frame.dimension
    if h % 2:
        raise ValueError("random Γ_Z words need an even-dimensional frame")
    genus = h // 2
    j = standard_symplectic(genus)
    psi = frame.psi0_exact
    if psi != j and psi != -j:
        raise ValueError("random Γ_Z words need the standard symplectic Ψ₀")

    eye = sp.eye(genus)
    zero = sp.zeros(genus, genus)
    word = sp.eye(h)
    for _ in range(length):
        kind = rng.integers(3)
        if kind == 0:
            gen = j if rng.integers(2) else j.T
        elif kind == 1:
            s = sp.Matrix(rng.integers(-2, 3, size=(genus, genus)))
            s = s + s.T
            gen = _blocks(eye, s, zero, eye) if rng.integers(2) else _blocks(eye, zero, s, eye)
        else:
            u = _random_unimodular(genus, rng)
            gen = _blocks(u, zero, zero, u.inv().T)
        word = word * gen
    return word


def _random_unimodular(n: int, rng: np.random.Generator) -> sp.Matrix:
    u = sp.eye(n)
    for _ in range(2 * n):
        r, c = rng.integers(n), rng.integers(n)
        if r != c:
            elementary = sp.eye(n)
            elementary[r, c] = int(rng.integers(-2, 3))
            u = u * elementary
    if rng.integers(2):
        u[0, :] = -u[0, :]
    return u


def g0_lie_algebra(frame: HodgeFrame) -> np.ndarray:
    """
    Basis of {X block upper triangular : XᵀΦ₀ + Φ₀X = 0}.

    Returns:
        Array of shape (k, h, h)
    """
    h = frame.dimension
    level = np.zeros(h, dtype=int)
    for i in range(1, frame.weight + 1):
        level[:frame.filtration_dim(i)] = i
    positions = [(r, s) for r in range(h) for s in range(h) if level[r] >= level[s]]

    columns = []
    phi0 = frame.phi0
    for r, s in positions:
        e = np.zeros((h, h), dtype=complex)
        e[r, s] = 1
        columns.append((e.T @ phi0 + phi0 @ e).reshape(-1))
    kernel = null_space(np.array(columns).T, 1e-12)
    basis = []
    for vec in kernel.T:
        x = np.zeros((h, h), dtype=complex)
        for coeff, (r, s) in zip(vec, positions):
            x[r, s] = coeff
        basis.append(x)
    return np.array(basis)


def random_g0(frame: HodgeFrame, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """exp of a random element of the Lie algebra of G₀."""
    basis = g0_lie_algebra(frame)
    coeffs = scale * (rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis)))
    x = np.tensordot(coeffs, basis, axes=1)
    g = mpmath.expm(mpmath.matrix(x.tolist()))
    return np.array(g.tolist(), dtype=complex)


# ---------------------------------------------------------- elliptic parameters

def elliptic_g0_matrix(k, k_prime) -> np.ndarray:
    """[[k, k'], [0, 1/k]]."""
    if k == 0:
        raise ZeroScaling("k must be nonzero")
    return np.array([[k, k_prime], [0, 1 / k]], dtype=complex)


def discriminant(t: Parameters):
    """27 t3² − t2³."""
    _, t2, t3 = t
    return 27 * t3 ** 2 - t2 ** 3


def elliptic_parameter_action(t: Parameters, g: G0Pair) -> Parameters:
    """
    t•g = (t1 k⁻² + k' k⁻¹, t2 k⁻⁴, t3 k⁻⁶).

    Exact when the inputs are Fractions.

    Raises:
        ZeroScaling: k = 0
        DiscriminantZero: t on the locus 27 t3² = t2³
    """
    k, k_prime = g
    if k == 0:
        raise ZeroScaling("k must be nonzero")
    if discriminant(t) == 0:
        raise DiscriminantZero("t lies on the discriminant locus")
    t1, t2, t3 = t
    k = _exact(k)
    return (t1 / k ** 2 + _exact(k_prime) / k, t2 / k ** 4, t3 / k ** 6)


def compose_g0(g: G0Pair, h: G0Pair) -> G0Pair:
    """(k, k')·(l, l') = (kl, kl' + k'/l), the product of the 2x2 matrices."""
    k, kp = g
    l, lp = h
    if k == 0 or l == 0:
        raise ZeroScaling("k must be nonzero")
    k, kp, l, lp = map(_exact, (k, kp, l, lp))
    return (k * l, k * lp + kp / l)


def _exact(value):
    if isinstance(value, int):
        return Fraction(value)
    return value
