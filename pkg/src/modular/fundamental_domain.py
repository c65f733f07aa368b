"""
SL(2,Z) reduction of points in the upper half-plane.

The reduced point satisfies -1/2 <= Re(tau) < 1/2 and |tau| >= 1, with
points on the unit arc moved to the half Re(tau) <= 0.
"""
import logging
from typing import NamedTuple, Tuple

from src.errors import DomainError

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-9
MAX_STEPS = 1000

Matrix2 = Tuple[int, int, int, int]


class ReducedPoint(NamedTuple):
    """A reduced point and the matrix (a, b, c, d) with tau_reduced = (a tau + b)/(c tau + d)."""
    tau: complex
    matrix: Matrix2


def apply_mobius(matrix: Matrix2, tau: complex) -> complex:
    a, b, c, d = matrix
    return (a * tau + b) / (c * tau + d)


def reduce_to_fundamental_domain(tau: complex, tol: float = BOUNDARY_TOL) -> ReducedPoint:
    """
    Move tau into the standard fundamental domain by translations and inversions.

    Args:
        tau: Point with positive imaginary part
        tol: Slack used on the domain boundary

    Returns:
        ReducedPoint with the reduced value and the accumulated SL(2,Z) matrix
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError(f"Im(tau) must be positive, got {tau.imag}")

    a, b, c, d = 1, 0, 0, 1
    z = tau
    for _ in range(MAX_STEPS):
        n = round(z.real)
        if n:
            z -= n
            a, b = a - n * c, b - n * d
        if abs(z) < 1 - tol:
            z = -1 / z
            a, b, c, d = -c, -d, a, b
            continue
        break
    else:
        logger.warning("reduction of %s did not settle after %d steps", tau, MAX_STEPS)

    # Canonical representative on the boundary
    if z.real >= 0.5 - tol:
        z -= 1
        a, b = a - c, b - d
    if abs(abs(z) - 1) <= tol and z.real > tol:
        z = -1 / z
        a, b, c, d = -c, -d, a, b
    return ReducedPoint(z, (a, b, c, d))


def fundamental_domain_distance(x: complex, y: complex) -> float:
    """Distance between two reduced points, identifying the boundary edges."""
    candidates = [y, y + 1, y - 1]
    if abs(abs(y) - 1) <= 1e-6:
        candidates.append(-1 / y)
    return min(abs(x - w) for w in candidates)
