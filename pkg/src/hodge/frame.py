"""
Hodge frames, lattice points and period matrices.

A HodgeFrame fixes the weight m, the Hodge numbers h^{i,m-i}, the lattice
intersection matrix Ψ₀ and the polarization Φ₀ in a filtration-compatible
basis ω.  The filtration is positional: F^i is spanned by the first h^i
basis vectors, where h^i = Σ_{j≥i} h^{j,m-j}.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np
import sympy as sp

from src.errors import DimensionMismatch, InvalidFrame, SchemaError, SingularLattice, SingularPeriod
from src.linalg import integer_matrix, inverse_condition

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-10

FRAME_SCHEMA = '{"m": <int>, "hodge_numbers": [...], "psi0": [[...]], "phi0": [[...]]}'


@dataclass(frozen=True, eq=False)
class HodgeFrame:
    """Weight, Hodge numbers and the two polarization matrices."""
    weight: int
    hodge_numbers: Tuple[int, ...]
    psi0: np.ndarray
    phi0: np.ndarray
    name: str = field(default="custom")

    def __post_init__(self):
        hodge = tuple(int(n) for n in self.hodge_numbers)
        object.__setattr__(self, "hodge_numbers", hodge)
        psi0 = np.asarray(self.psi0)
        phi0 = np.asarray(self.phi0, dtype=complex)
        object.__setattr__(self, "psi0", psi0)
        object.__setattr__(self, "phi0", phi0)
        self._validate()

    def _validate(self):
        m, hodge = self.weight, self.hodge_numbers
        if m < 0 or len(hodge) != m + 1 or any(n < 0 for n in hodge):
            raise InvalidFrame(f"need m+1 = {m + 1} non-negative Hodge numbers, got {hodge}")
        h = sum(hodge)
        if self.psi0.shape != (h, h) or self.phi0.shape != (h, h):
            raise InvalidFrame(f"psi0 and phi0 must be {h}x{h}")

        try:
            psi = self.psi0_exact
        except ValueError as exc:
            raise InvalidFrame(f"psi0 must be an integer matrix: {exc}") from exc
        if psi.det() == 0:
            raise InvalidFrame("psi0 is singular")
        sign = 1 if m % 2 == 0 else -1
        if psi.T != sign * psi:
            kind = "symmetric" if sign == 1 else "antisymmetric"
            raise InvalidFrame(f"psi0 must be {kind} for weight {m}")

        for i in range(m + 1):
            for j in range(m + 1):
                if i + j > m:
                    block = self.phi0[:self.filtration_dim(i), :self.filtration_dim(j)]
                    if block.size and np.max(np.abs(block)) > 0:
                        raise InvalidFrame(f"phi0 pairs F^{i} with F^{j} nontrivially")

    # ------------------------------------------------------ derived data

    @property
    def dimension(self) -> int:
        return sum(self.hodge_numbers)

    def filtration_dim(self, i: int) -> int:
        """h^i = dim F^i; h for i <= 0 and 0 for i > m."""
        if i <= 0:
            return self.dimension
        return sum(self.hodge_numbers[i:])

    @property
    def filtration_dims(self) -> List[int]:
        return [self.filtration_dim(i) for i in range(self.weight + 1)]

    @property
    def psi0_exact(self) -> sp.Matrix:
        return integer_matrix(self.psi0)

    @property
    def psi0_inv_T(self) -> np.ndarray:
        return np.linalg.inv(self.psi0.astype(complex)).T

    def check_shape(self, matrix: np.ndarray, what: str = "matrix"):
        h = self.dimension
        if np.shape(matrix) != (h, h):
            raise DimensionMismatch(f"{what} has shape {np.shape(matrix)}, frame needs {h}x{h}")

    # ------------------------------------------------------ standard frames

    @classmethod
    def elliptic(cls) -> "HodgeFrame":
        j = np.array([[0, -1], [1, 0]])
        return cls(1, (1, 1), j, j, name="elliptic")

    @classmethod
    def siegel(cls, genus: int) -> "HodgeFrame":
        eye = np.eye(genus, dtype=int)
        zero = np.zeros((genus, genus), dtype=int)
        j = np.block([[zero, -eye], [eye, zero]])
        return cls(1, (genus, genus), j, j, name=f"siegel-{genus}")

    @classmethod
    def quintic(cls) -> "HodgeFrame":
        psi0 = np.array([
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [-1, 0, 0, 0],
            [0, -1, 0, 0],
        ])
        phi0 = np.array([
            [0, 0, 0, 1],
            [0, 0, 1, 0],
            [0, -1, 0, 0],
            [-1, 0, 0, 0],
        ])
        return cls(3, (1, 1, 1, 1), psi0, phi0, name="quintic")

    @classmethod
    def default_for(cls, h: int) -> "HodgeFrame":
        """Frame used when only a matrix size is known."""
        if h == 2:
            return cls.elliptic()
        if h == 4:
            return cls.quintic()
        if h % 2 == 0 and h > 0:
            return cls.siegel(h // 2)
        raise DimensionMismatch(f"no default frame of dimension {h}")

    # ------------------------------------------------------ JSON

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "HodgeFrame":
        try:
            m = int(data["m"])
            hodge = [int(n) for n in data["hodge_numbers"]]
            psi0 = np.array(data["psi0"])
            phi0 = np.array([[_complex_entry(v) for v in row] for row in data["phi0"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"frame JSON must look like {FRAME_SCHEMA}") from exc
        return cls(m, tuple(hodge), psi0, phi0)

    def to_json(self) -> Dict[str, Any]:
        phi0 = [[_json_entry(v) for v in row] for row in self.phi0]
        return {
            "m": self.weight,
            "hodge_numbers": list(self.hodge_numbers),
            "psi0": self.psi0.astype(int).tolist(),
            "phi0": phi0,
        }


def _complex_entry(value) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def _json_entry(value: complex):
    value = complex(value)
    if value.imag == 0:
        return value.real
    return [value.real, value.imag]


# ---------------------------------------------------------- points

@dataclass(frozen=True, eq=False)
class LatticePoint:
    """
    Lattice basis δ = p·ω in filtration coordinates.

    Row i of p holds the ω-coordinates of δ_i.
    """
    frame: HodgeFrame
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=complex)
        self.frame.check_shape(p, "lattice matrix p")
        rcond = inverse_condition(p)
        if rcond < SINGULAR_TOL:
            raise SingularLattice(f"p is numerically singular (1/cond = {rcond:.3e})")
        object.__setattr__(self, "p", p)

    @property
    def inverse_condition(self) -> float:
        return inverse_condition(self.p)

    @classmethod
    def from_periods(cls, frame: HodgeFrame, per) -> "LatticePoint":
        """Lattice presentation p = Ψ₀·per⁻ᵀ of a period matrix."""
        per = np.asarray(per, dtype=complex)
        frame.check_shape(per, "period matrix")
        if inverse_condition(per) < SINGULAR_TOL:
            raise SingularPeriod("period matrix is numerically singular")
        return cls(frame, frame.psi0.astype(complex) @ np.linalg.inv(per).T)

    def periods(self) -> "PeriodMatrix":
        """Inverse of from_periods: per = Ψ₀ᵀ·p⁻ᵀ."""
        per = self.frame.psi0.astype(complex).T @ np.linalg.inv(self.p).T
        return PeriodMatrix(self.frame, per)

    def act(self, g: np.ndarray) -> "LatticePoint":
        """Right action x ↦ x·g of a filtration isometry; p becomes p·g⁻ᵀ."""
        return self.periods().act_right(g).lattice()


@dataclass(frozen=True, eq=False)
class PeriodMatrix:
    """Period matrix per = [∫_{δ_i} ω_j]."""
    frame: HodgeFrame
    per: np.ndarray

    def __post_init__(self):
        per = np.asarray(self.per, dtype=complex)
        self.frame.check_shape(per, "period matrix")
        object.__setattr__(self, "per", per)

    @property
    def q(self) -> np.ndarray:
        """Dual presentation with Ψ₀ᵀ = per·qᵀ."""
        return (np.linalg.inv(self.per) @ self.frame.psi0.T.astype(complex)).T

    def lattice(self) -> LatticePoint:
        return LatticePoint.from_periods(self.frame, self.per)

    def act_left(self, a: np.ndarray) -> "PeriodMatrix":
        return PeriodMatrix(self.frame, np.asarray(a, dtype=complex) @ self.per)

    def act_right(self, g: np.ndarray) -> "PeriodMatrix":
        return PeriodMatrix(self.frame, self.per @ np.asarray(g, dtype=complex))


def elliptic_period_matrix(tau: complex) -> np.ndarray:
    """The normalized elliptic period matrix [[τ, -1], [1, 0]]."""
    return np.array([[tau, -1], [1, 0]], dtype=complex)

