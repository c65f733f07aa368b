"""
Tests for the connection matrix and the F, G identities along built-in paths.
"""
import numpy as np
import pytest
import sympy as sp

from src.base import PeriodPath
from src.errors import SchemaError, SingularPeriod
from src.hodge.connection import (
    CONSTANCY_TOL,
    F_matrix,
    G_matrix,
    ODE_TOL,
    TRANSVERSALITY_TOL,
    connection_matrix,
    constancy_residual,
    f_matrix,
    f_ode_residual,
    g_ode_residual,
    griffiths_pattern,
    integrability_residual,
    transversality_check,
)
from src.hodge.frame import HodgeFrame, PeriodMatrix, elliptic_period_matrix
from src.hodge.paths import (
    PERTURBATION,
    EllipticFamilyPath,
    EllipticPath,
    TauPath,
    TransversalTauPath,
    get_path,
)


class ConstantPath(PeriodPath):
    """A path that never moves."""

    name = "constant"

    def __init__(self, per):
        self.per = np.asarray(per, dtype=complex)

    @property
    def dimension(self) -> int:
        return 1

    @property
    def frame(self):
        return HodgeFrame.elliptic()

    def __call__(self, t):
        return self.per


@pytest.fixture(scope="module")
def transversal_solution():
    return TransversalTauPath(terms=8).solution


def random_tangent(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


# ------------------------------------------------------------ connection matrix

def test_constant_path_has_zero_connection():
    path = ConstantPath([[1.5j, -1], [1, 0]])
    a = connection_matrix(path, [0j], [1])
    assert np.allclose(a, 0)


def test_singular_period_matrix_raises():
    path = ConstantPath(np.zeros((2, 2)))
    with pytest.raises(SingularPeriod):
        connection_matrix(path, [0j], [1])


def test_elliptic_connection():
    a = connection_matrix(EllipticPath(), [0.3 + 1.7j], [1])
    assert np.allclose(a, [[0, -1], [0, 0]], atol=1e-8)


def test_wrong_parameter_length():
    with pytest.raises(ValueError):
        connection_matrix(TauPath(), [1j], [1])


def test_f_matrix_exact_for_sympy_input():
    tau = sp.Symbol("tau")
    per = sp.Matrix([[tau, -1], [1, 0]])
    assert f_matrix(per, HodgeFrame.elliptic().psi0) == sp.Matrix([[0, -1], [1, 0]])


# ------------------------------------------------------------ F and G identities

@pytest.mark.parametrize("factory", [EllipticPath, EllipticFamilyPath, TauPath])
def test_f_and_g_odes(factory, rng):
    path = factory()
    t = path.default_point()
    v = random_tangent(rng, path.dimension)
    assert f_ode_residual(path, t, v) < ODE_TOL
    assert g_ode_residual(path, t, v) < ODE_TOL


@pytest.mark.parametrize("factory", [EllipticPath, TauPath])
def test_constancy_inside_the_polarized_locus(factory, rng):
    path = factory()
    result = constancy_residual(path, path.default_point(), random_tangent(rng, path.dimension))
    assert result.ok
    assert result.skew < CONSTANCY_TOL


def test_integrability_on_tau_path(rng):
    path = TauPath()
    u, v = random_tangent(rng, 4), random_tangent(rng, 4)
    assert integrability_residual(path, path.default_point(), u, v) < 1e-6


# ------------------------------------------------------------ transversality

def test_griffiths_patterns():
    assert griffiths_pattern(HodgeFrame.elliptic()) == []
    assert griffiths_pattern(HodgeFrame.quintic()) == [(1, 3), (1, 4), (2, 4)]


def test_elliptic_family_is_trivially_transversal(rng):
    path = EllipticFamilyPath()
    assert transversality_check(path, path.default_point(), random_tangent(rng, 3)).ok


def test_free_tau_path_is_not_transversal(rng):
    path = TauPath()
    result = transversality_check(path, path.default_point(), random_tangent(rng, 4))
    assert not result.ok
    assert result.offending


def test_transversal_solution_passes(transversal_solution):
    path = TransversalTauPath(solution=transversal_solution)
    result = transversality_check(path, path.default_point(), [1])
    assert result.ok
    assert result.max_violation < TRANSVERSALITY_TOL


def test_perturbed_solution_fails(transversal_solution):
    path = TransversalTauPath(tau3_shift=PERTURBATION, solution=transversal_solution)
    result = transversality_check(path, path.default_point(), [1])
    assert not result.ok
    assert result.max_violation == pytest.approx(PERTURBATION, rel=1e-6)
    assert {(i, j) for i, j, _ in result.offending} == {(1, 3), (2, 4)}


# ------------------------------------------------------------ path registry

def test_get_path_names():
    assert get_path("builtin:elliptic").name == "elliptic"
    assert get_path("mq-tau").dimension == 4


def test_get_path_unknown():
    with pytest.raises(SchemaError):
        get_path("builtin:nowhere")


# ------------------------------------------------------------ F and G of a point

def test_F_of_elliptic_point_is_standard():
    P = PeriodMatrix(HodgeFrame.elliptic(), elliptic_period_matrix(0.4 + 0.9j))
    assert np.allclose(F_matrix(P), [[0, -1], [1, 0]])


def test_F_scales_quadratically():
    frame = HodgeFrame.elliptic()
    per = elliptic_period_matrix(-0.3 + 2.0j)
    s = 1.5 - 0.5j
    base = F_matrix(PeriodMatrix(frame, per))
    assert np.allclose(F_matrix(PeriodMatrix(frame, s * per)), s ** 2 * base)


def test_G_equals_F_for_real_periods():
    P = PeriodMatrix(HodgeFrame.elliptic(), np.array([[2.0, -1.0], [1.0, 3.0]]))
    assert np.allclose(G_matrix(P), F_matrix(P))
