"""
Matrix helpers shared by the hodge, group and siegel modules.

JSON matrices use {"rows": r, "cols": c, "entries": [[re, im], ...]} in
row-major order.
"""
import logging
from typing import Any, Dict

import numpy as np
import sympy as sp

from src.errors import SchemaError

logger = logging.getLogger(__name__)

MATRIX_SCHEMA = '{"rows": r, "cols": c, "entries": [[re, im], ...] (row-major)}'


# ---------------------------------------------------------- JSON codec

def matrix_to_json(matrix) -> Dict[str, Any]:
    arr = np.asarray(matrix, dtype=complex)
    rows, cols = arr.shape
    entries = [[float(z.real), float(z.imag)] for z in arr.reshape(-1)]
    return {"rows": rows, "cols": cols, "entries": entries}


def matrix_from_json(data: Dict[str, Any]) -> np.ndarray:
    """
    Parse the documented matrix schema into a complex ndarray.

    Raises:
        SchemaError: when keys are missing or the entry count is wrong
    """
    try:
        rows, cols = int(data["rows"]), int(data["cols"])
        raw = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"matrix JSON must look like {MATRIX_SCHEMA}") from exc
    if len(raw) != rows * cols:
        raise SchemaError(f"expected {rows * cols} entries, got {len(raw)}")
    values = []
    for entry in raw:
        if isinstance(entry, (int, float)):
            values.append(complex(entry))
        elif isinstance(entry, (list, tuple)) and len(entry) == 2:
            values.append(complex(float(entry[0]), float(entry[1])))
        else:
            raise SchemaError(f"matrix entry must be [re, im], got {entry!r}")
    return np.array(values, dtype=complex).reshape(rows, cols)


def integer_matrix(arr, tol: float = 0.0) -> sp.Matrix:
    """
    Exact integer sympy Matrix from a numeric array.

    Raises:
        ValueError: when an entry is not an integer within ``tol``
    """
    arr = np.asarray(arr, dtype=complex)
    rows = []
    for row in arr:
        out = []
        for z in row:
            if abs(z.imag) > tol or abs(z.real - round(z.real)) > tol:
                raise ValueError(f"entry {z} is not an integer")
            out.append(int(round(z.real)))
        rows.append(out)
    return sp.Matrix(rows)


# ---------------------------------------------------------- subspaces

def null_space(matrix: np.ndarray, rtol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of ``matrix``."""
    matrix = np.atleast_2d(matrix)
    n = matrix.shape[1]
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    _, s, vh = np.linalg.svd(matrix, full_matrices=True)
    if s.size == 0 or s[0] == 0:
        return np.eye(n, dtype=complex)
    rank = int(np.sum(s > rtol * s[0]))
    return vh[rank:].conj().T


def orthonormal_basis(vectors: np.ndarray, rtol: float) -> np.ndarray:
    """Orthonormal basis of the column span."""
    h = vectors.shape[0]
    if vectors.size == 0:
        return np.zeros((h, 0), dtype=complex)
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    if s[0] == 0:
        return np.zeros((h, 0), dtype=complex)
    rank = int(np.sum(s > rtol * s[0]))
    return u[:, :rank]


def intersect(a: np.ndarray, b: np.ndarray, rtol: float) -> np.ndarray:
    """
    Orthonormal basis of span(a) ∩ span(b) for column-basis matrices.

    Solves a x = b y through the kernel of [a, -b].
    """
    h = a.shape[0]
    if a.shape[1] == 0 or b.shape[1] == 0:
        return np.zeros((h, 0), dtype=complex)
    a = orthonormal_basis(a, rtol)
    b = orthonormal_basis(b, rtol)
    kernel = null_space(np.hstack([a, -b]), rtol)
    if kernel.shape[1] == 0:
        return np.zeros((h, 0), dtype=complex)
    return orthonormal_basis(a @ kernel[:a.shape[1]], rtol)


def subspace_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Spectral norm of the difference of orthogonal projectors."""
    if u.shape[1] != v.shape[1]:
        return float("inf")
    pu = u @ u.conj().T
    pv = v @ v.conj().T
    return float(np.linalg.norm(pu - pv, 2))


def inverse_condition(matrix: np.ndarray) -> float:
    """1 / cond_2, zero for singular input."""
    s = np.linalg.svd(matrix, compute_uv=False)
    if s[0] == 0:
        return 0.0
    return float(s[-1] / s[0])
