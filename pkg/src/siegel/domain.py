"""
Weight-one period matrices of genus g and the Siegel upper half-space.

A 2g x 2g period matrix splits into blocks [[x1, x2], [x3, x4]].  The
Riemann relations

    x3ᵀx1 = x1ᵀx3,    x3ᵀx2 − x1ᵀx4 = −I,    i(x3ᵀ·conj(x1) − x1ᵀ·conj(x3)) > 0

make x = x1·x3⁻¹ a point of the Siegel upper half-space.  Sp(2g, Z) acts
on the left (fractional-linear on x) and G₀ on the right (trivially on x).
"""
import logging
from dataclasses import dataclass

import numpy as np
import sympy as sp

from src.errors import DimensionMismatch, SingularBlock
from src.linalg import integer_matrix, inverse_condition

logger = logging.getLogger(__name__)

RELATION_TOL = 1e-10
SIEGEL_TOL = 1e-9
SINGULAR_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SiegelBlocks:
    """Row blocks of a 2g x 2g weight-one period matrix."""
    genus: int
    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray
    x4: np.ndarray

    def __post_init__(self):
        g = self.genus
        for name in ("x1", "x2", "x3", "x4"):
            block = np.atleast_2d(np.asarray(getattr(self, name), dtype=complex))
            if block.shape != (g, g):
                raise DimensionMismatch(f"{name} has shape {block.shape}, genus {g} needs {g}x{g}")
            object.__setattr__(self, name, block)

    @classmethod
    def from_period_matrix(cls, per) -> "SiegelBlocks":
        per = np.asarray(per, dtype=complex)
        n = per.shape[0]
        if per.shape != (n, n) or n % 2:
            raise DimensionMismatch(f"period matrix must be square of even size, got {per.shape}")
        g = n // 2
        return cls(g, per[:g, :g], per[:g, g:], per[g:, :g], per[g:, g:])

    def to_period_matrix(self) -> np.ndarray:
        return np.block([[self.x1, self.x2], [self.x3, self.x4]])

    @classmethod
    def embed(cls, z) -> "SiegelBlocks":
        """The point [[z, −I], [I, 0]] over a Siegel matrix z."""
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        g = z.shape[0]
        eye = np.eye(g, dtype=complex)
        return cls(g, z, -eye, eye, np.zeros((g, g), dtype=complex))

    def act_left(self, a) -> "SiegelBlocks":
        """A·per for A in Sp(2g, Z)."""
        a = np.array(sp.Matrix(a).evalf() if isinstance(a, sp.MatrixBase) else a, dtype=complex)
        return SiegelBlocks.from_period_matrix(a @ self.to_period_matrix())

    def act_right(self, g) -> "SiegelBlocks":
        """per·g for g in G₀."""
        return SiegelBlocks.from_period_matrix(self.to_period_matrix() @ np.asarray(g, dtype=complex))


# ---------------------------------------------------------- checks

@dataclass(frozen=True)
class RiemannResult:
    ok: bool
    symmetry_residual: float
    bilinear_residual: float
    x1_inverse_condition: float
    x2_inverse_condition: float
    min_eigenvalue: float

    @property
    def max_residual(self) -> float:
        return max(self.symmetry_residual, self.bilinear_residual)


def positivity_matrix(b: SiegelBlocks) -> np.ndarray:
    """i(x3ᵀ·conj(x1) − x1ᵀ·conj(x3)), Hermitian for valid blocks."""
    return 1j * (b.x3.T @ b.x1.conj() - b.x1.T @ b.x3.conj())


def riemann_check(b: SiegelBlocks) -> RiemannResult:
    """All three Riemann relations plus invertibility of x1 and x2."""
    scale = max(1.0, float(np.max(np.abs(b.to_period_matrix())))) ** 2
    eye = np.eye(b.genus)
    symmetry = float(np.max(np.abs(b.x3.T @ b.x1 - b.x1.T @ b.x3))) / scale
    bilinear = float(np.max(np.abs(b.x3.T @ b.x2 - b.x1.T @ b.x4 + eye))) / scale
    rc1 = inverse_condition(b.x1)
    rc2 = inverse_condition(b.x2)

    pos = positivity_matrix(b)
    hermitian = (pos + pos.conj().T) / 2
    min_eig = float(np.linalg.eigvalsh(hermitian)[0])

    ok = (
        symmetry <= RELATION_TOL
        and bilinear <= RELATION_TOL
        and rc1 > SINGULAR_TOL
        and rc2 > SINGULAR_TOL
        and min_eig > 0
    )
    return RiemannResult(ok, symmetry, bilinear, rc1, rc2, min_eig)


@dataclass(frozen=True, eq=False)
class SiegelImage:
    """x = x1·x3⁻¹ with its postcondition residuals."""
    z: np.ndarray
    symmetry_residual: float
    min_imag_eigenvalue: float

    @property
    def ok(self) -> bool:
        return self.symmetry_residual <= SIEGEL_TOL and self.min_imag_eigenvalue > 0


def to_siegel(b: SiegelBlocks) -> SiegelImage:
    """
    x1·x3⁻¹ together with symmetry and Im-positivity diagnostics.

    Raises:
        SingularBlock: x3 not invertible
    """
    if inverse_condition(b.x3) < SINGULAR_TOL:
        raise SingularBlock("x3 is numerically singular")
    z = b.x1 @ np.linalg.inv(b.x3)
    symmetry = float(np.max(np.abs(z - z.T))) / max(1.0, float(np.max(np.abs(z))))
    imag = ((z - z.conj()) / 2j)
    imag = (imag + imag.T) / 2
    min_eig = float(np.min(np.linalg.eigvalsh(imag.real)))
    image = SiegelImage(z, symmetry, min_eig)
    if not image.ok:
        logger.warning("Siegel postcondition failed: symmetry %.3e, min Im eigenvalue %.3e",
                       symmetry, min_eig)
    return image


# ---------------------------------------------------------- Sp(2g, Z)

def sp_membership(a) -> bool:
    """abᵀ = baᵀ, cdᵀ = dcᵀ and adᵀ − bcᵀ = I, exactly."""
    shape = np.shape(a) if not isinstance(a, sp.MatrixBase) else a.shape
    if len(shape) != 2 or shape[0] != shape[1] or shape[0] % 2:
        raise DimensionMismatch(f"Sp(2g, Z) needs a square matrix of even size, got {shape}")
    if isinstance(a, sp.MatrixBase):
        exact = a
        if not all(v.is_integer for v in exact):
            return False
    else:
        try:
            exact = integer_matrix(a)
        except ValueError:
            return False
    g = shape[0] // 2
    a_, b_ = exact[:g, :g], exact[:g, g:]
    c_, d_ = exact[g:, :g], exact[g:, g:]
    return (
        a_ * b_.T == b_ * a_.T
        and c_ * d_.T == d_ * c_.T
        and a_ * d_.T - b_ * c_.T == sp.eye(g)
    )


def fractional_linear(a, z) -> np.ndarray:
    """(a·z + b)(c·z + d)⁻¹."""
    a = np.array(sp.Matrix(a).evalf() if isinstance(a, sp.MatrixBase) else a, dtype=complex)
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    g = z.shape[0]
    a_, b_ = a[:g, :g], a[:g, g:]
    c_, d_ = a[g:, :g], a[g:, g:]
    return (a_ @ z + b_) @ np.linalg.inv(c_ @ z + d_)


# ---------------------------------------------------------- random points

def random_siegel_matrix(genus: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric X + iY with Y positive definite."""
    x = rng.standard_normal((genus, genus))
    b = rng.standard_normal((genus, genus))
    y = b @ b.T + 0.5 * np.eye(genus)
    return (x + x.T) / 2 + 1j * y


def siegel_g0(k, s) -> np.ndarray:
    """[[k, s·k⁻ᵀ], [0, k⁻ᵀ]] for invertible k and symmetric s."""
    k = np.atleast_2d(np.asarray(k, dtype=complex))
    s = np.atleast_2d(np.asarray(s, dtype=complex))
    k_inv_t = np.linalg.inv(k).T
    g = k.shape[0]
    return np.block([[k, s @ k_inv_t], [np.zeros((g, g)), k_inv_t]])


def random_g0(genus: int, rng: np.random.Generator) -> np.ndarray:
    k = np.eye(genus) + 0.4 * (rng.standard_normal((genus, genus))
                               + 1j * rng.standard_normal((genus, genus)))
    s = rng.standard_normal((genus, genus)) + 1j * rng.standard_normal((genus, genus))
    return siegel_g0(k, (s + s.T) / 2)


def random_siegel_point(genus: int, rng: np.random.Generator) -> SiegelBlocks:
    """embed(random x̃) moved by a random G₀ element."""
    return SiegelBlocks.embed(random_siegel_matrix(genus, rng)).act_right(random_g0(genus, rng))


def route_mismatch(b: SiegelBlocks, a) -> float:
    """Relative gap between to_siegel(A·b) and (a x + b)(c x + d)⁻¹, x = to_siegel(b)."""
    acted = to_siegel(b.act_left(a)).z
    mapped = fractional_linear(a, to_siegel(b).z)
    scale = max(1.0, float(np.max(np.abs(mapped))))
    return float(np.max(np.abs(acted - mapped))) / scale
