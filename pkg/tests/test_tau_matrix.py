"""
Tests for the τ-coordinates of the mirror quintic and the τ-matrix identities.
"""
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from src.quintic.tau import (
    TAU_CONNECTION_TOL,
    TauSeries,
    displayed_connection,
    griffiths_tangent,
    polarization_identity,
    tau1_polynomial,
    tau1_q_part,
    tau2_series,
    tau_inverse_transpose,
    tau_matrix,
    transversal_solution,
    verify_tau_matrix,
    verify_transversality_odes,
)


@pytest.fixture(scope="module")
def solution():
    return transversal_solution(6)


# ------------------------------------------------------------ τ-series

def test_tau1_polynomial_part():
    assert tau1_polynomial(4).polynomial_part() == {
        0: Fraction(-25, 12),
        1: Fraction(5, 2),
        2: Fraction(5, 2),
    }


def test_tau1_q_part(solution):
    q_part = solution.tau1.q_part(0, grade=-2)
    assert q_part.grade == -2
    assert q_part[1] == 2875
    # (n_1 + 8 n_2) / 4
    assert q_part[2] == Fraction(2875 + 8 * 609250, 4)


def test_tau1_q_part_from_numbers():
    assert tau1_q_part([2875], 1)[1] == 2875


def test_tau2_polynomial_part(solution):
    assert solution.tau2.polynomial_part() == {1: Fraction(-25, 12), 3: Fraction(-5, 6)}


def test_derivative_and_integral_are_inverse():
    s = TauSeries.polynomial([0, 3, 0, Fraction(1, 2)], 2)
    assert s.derivative().integral() == s


def test_tau2_of_pure_polynomial():
    tau1 = tau1_polynomial(3)
    assert tau2_series(tau1).derivative() == tau1.sub(tau1.derivative().times_tau0())


def test_transversality_odes_hold_exactly(solution):
    check = verify_transversality_odes(6, solution)
    assert check.yukawa_ok
    assert check.tau2_ok
    assert check.first_mismatch == ()


def test_evaluate_matches_direct_sum(solution):
    tau0 = 0.1 + 2j
    value = solution.tau1.evaluate(tau0)
    expected = -25 / 12 + 2.5 * tau0 * (tau0 + 1) + solution.tau1.q_part(0, grade=-2)(tau0)
    assert value == pytest.approx(expected)


# ------------------------------------------------------------ τ-matrix

def test_inverse_transpose_closed_form():
    point = (0.2 + 2j, 0.5 - 0.1j, -0.3 + 0.4j, 1.1 + 0.2j)
    tau = tau_matrix(*point)
    assert np.allclose(tau.T @ tau_inverse_transpose(*point), np.eye(4))


def test_polarization_identity_symbolic():
    assert polarization_identity(*sp.symbols("t0:4")).is_zero_matrix


def test_polarization_identity_at_i():
    assert polarization_identity(sp.I, Fraction(1, 3), -2, Fraction(7, 5)).is_zero_matrix


def test_griffiths_tangent_kills_constraints():
    point = (0.2 + 2j, 0.5 - 0.1j, -0.3 + 0.4j, 1.1 + 0.2j)
    a = displayed_connection(point, griffiths_tangent(point, free=0.7))
    for i, j in ((0, 2), (0, 3), (1, 3)):
        assert abs(a[i, j]) < 1e-14
    assert a[0, 1] == 1


@pytest.mark.parametrize("mode", ["symbolic", "numeric", "all"])
def test_verify_tau_matrix(mode, rng):
    check = verify_tau_matrix(rng, trials=5, mode=mode)
    assert check.ok
    if mode != "symbolic":
        assert check.connection_residual < TAU_CONNECTION_TOL
        assert check.griffiths_nonzero == pytest.approx(1.0)
