"""
Tests for SL(2,Z) reduction.
"""
import cmath

import pytest

from src.errors import DomainError
from src.modular.fundamental_domain import (
    apply_mobius,
    fundamental_domain_distance,
    reduce_to_fundamental_domain,
)


def in_domain(z: complex) -> bool:
    return -0.5 - 1e-9 <= z.real < 0.5 and abs(z) >= 1 - 1e-9


@pytest.mark.parametrize("tau", [0.1j, 3.7 + 0.5j, -2.3 + 0.01j, 0.45 + 0.2j, 5j])
def test_reduction_lands_in_domain(tau):
    reduced = reduce_to_fundamental_domain(tau)
    a, b, c, d = reduced.matrix
    assert a * d - b * c == 1
    assert in_domain(reduced.tau)
    assert apply_mobius(reduced.matrix, tau) == pytest.approx(reduced.tau, rel=1e-9)


def test_inversion_of_small_point():
    reduced = reduce_to_fundamental_domain(0.1j)
    assert reduced.tau == pytest.approx(10j)


def test_right_edge_moves_left():
    reduced = reduce_to_fundamental_domain(0.5 + 1.2j)
    assert reduced.tau == pytest.approx(-0.5 + 1.2j)


def test_arc_moves_to_left_half():
    z = cmath.exp(1.2j)
    reduced = reduce_to_fundamental_domain(z)
    assert reduced.tau.real < 0
    assert reduced.tau == pytest.approx(-z.conjugate())


def test_lower_half_plane_raises():
    with pytest.raises(DomainError):
        reduce_to_fundamental_domain(-1j)


def test_distance_identifies_edges():
    assert fundamental_domain_distance(-0.5 + 2j, 0.5 + 2j) == pytest.approx(0)
    z = cmath.exp(1.2j)
    assert fundamental_domain_distance(-z.conjugate(), z) == pytest.approx(0, abs=1e-12)
