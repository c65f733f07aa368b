"""
Tests for elliptic periods and the inverse-period round trip.
"""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.elliptic.periods import (
    EQUIVARIANCE_TOL,
    EllipticParameters,
    g0_equivariance_residual,
    period_data,
    periods,
    weierstrass_roots,
    j_from_parameters,
)
from src.elliptic.roundtrip import ROUNDTRIP_TOL, inverse_roundtrip
from src.errors import DiscriminantZero, DomainError
from src.orchestrator import random_elliptic_parameters


@pytest.fixture
def sample_parameters():
    return EllipticParameters(0.1 + 0.2j, 3.0 + 0.5j, 0.7 - 0.3j)


# ------------------------------------------------------------ parameters

def test_discriminant_locus_rejected():
    with pytest.raises(DiscriminantZero):
        EllipticParameters(0, 3, 1)


def test_roots_sum_to_zero():
    roots = weierstrass_roots(3.0 + 0.5j, 0.7 - 0.3j)
    assert abs(complex(sum(roots))) < 1e-12


@pytest.mark.parametrize("t, expected", [
    ((0, 3, 0), 1728),
    ((0, 0, 1), 0),
    ((5, 1, 1), Fraction(1728, -26)),
])
def test_j_from_parameters_exact(t, expected):
    t = tuple(Fraction(v) for v in t)
    assert j_from_parameters(t) == expected


def test_j_from_parameters_discriminant():
    with pytest.raises(DiscriminantZero):
        j_from_parameters((0, Fraction(3), Fraction(1)))


# ------------------------------------------------------------ periods

def test_legendre_relation(sample_parameters):
    data = period_data(sample_parameters)
    assert data.legendre_residual < 1e-10
    assert not data.flagged
    assert data.ratio.imag > 0


def test_legendre_relation_random(rng):
    for _ in range(10):
        data = period_data(random_elliptic_parameters(rng))
        assert abs(np.linalg.det(data.per) - 1) < 1e-9
        assert (data.per[0, 0] * np.conj(data.per[1, 0])).imag > 0


def test_t1_shift_covariance(sample_parameters):
    shift = 0.4 - 1.1j
    base = period_data(sample_parameters).per
    moved = period_data(EllipticParameters(sample_parameters.t1 + shift,
                                           sample_parameters.t2,
                                           sample_parameters.t3)).per
    assert np.allclose(moved[:, 0], base[:, 0])
    assert np.allclose(moved[:, 1], base[:, 1] + shift * base[:, 0])


def test_periods_wraps_elliptic_frame(sample_parameters):
    assert periods(sample_parameters).frame.name == "elliptic"


@given(
    seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
    modulus=st.floats(min_value=0.5, max_value=2.0),
    angle=st.floats(min_value=0.0, max_value=6.28),
    shift_re=st.floats(min_value=-2.0, max_value=2.0),
    shift_im=st.floats(min_value=-2.0, max_value=2.0),
)
def test_periods_follow_g0_action(seed, modulus, angle, shift_re, shift_im):
    t = random_elliptic_parameters(np.random.default_rng(seed), min_discriminant=1.0)
    g = (modulus * np.exp(1j * angle), complex(shift_re, shift_im))
    assert g0_equivariance_residual(t, g) < EQUIVARIANCE_TOL


def test_identity_of_g0_is_equivariant(sample_parameters):
    assert g0_equivariance_residual(sample_parameters, (1, 0)) < 1e-12


# ------------------------------------------------------------ round trip

@pytest.mark.slow
@pytest.mark.parametrize("tau", [2j, 1j, 0.5 + 2j])
def test_roundtrip(tau):
    result = inverse_roundtrip(tau, 60)
    assert result.j_mismatch < ROUNDTRIP_TOL
    assert result.point_mismatch < ROUNDTRIP_TOL
    assert result.ok


def test_roundtrip_parameters_at_2i():
    result = inverse_roundtrip(2j, 30)
    t1, t2, t3 = result.parameters
    # E4 and E6 are real on the imaginary axis
    assert abs(t2.imag) < 1e-9 * abs(t2)
    assert abs(t3.real) < 1e-9 * abs(t3)
    assert result.legendre_residual < 1e-9


@given(st.floats(min_value=-0.5, max_value=0.5), st.floats(min_value=1.0, max_value=2.0))
def test_roundtrip_invariant_under_translation(x, y):
    tau = complex(x, y)
    base = inverse_roundtrip(tau, 30)
    shifted = inverse_roundtrip(tau + 1, 30)
    for a, b in zip(base.parameters, shifted.parameters):
        assert abs(a - b) <= 1e-9 * max(1.0, abs(a))
    assert abs(base.j_from_parameters - shifted.j_from_parameters) <= 1e-8 * max(
        1.0, abs(base.j_from_parameters))
    assert base.ok and shifted.ok


def test_roundtrip_lower_half_plane():
    with pytest.raises(DomainError):
        inverse_roundtrip(-1j, 10)
