"""
Tests for the quasi-modular polynomial ring.
"""
import pytest
import sympy as sp

from src.errors import SchemaError
from src.modular.eisenstein import discriminant_series
from src.modular.quasimodular import (
    E2,
    E4,
    E6,
    as_poly,
    check_derivation,
    depth,
    expand,
    is_homogeneous,
    parse_polynomial,
    ramanujan_derive,
    weight,
)


# ------------------------------------------------------------ derivation rules

def test_ramanujan_rules():
    assert ramanujan_derive(E2) == as_poly((E2**2 - E4) / 12)
    assert ramanujan_derive(E4) == as_poly((E2 * E4 - E6) / 3)
    assert ramanujan_derive(E6) == as_poly((E2 * E6 - E4**2) / 2)


def test_discriminant_is_log_derivative_eigenvector():
    delta = E4**3 - E6**2
    assert ramanujan_derive(delta) == as_poly(E2 * delta)


@pytest.mark.parametrize("text", ["E2", "E4", "E6", "E4^3 - E6^2", "E2^2*E4 + 3*E6", "7"])
def test_derivation_matches_q_expansion(text):
    residual = check_derivation(parse_polynomial(text), 25)
    assert residual.is_zero()


def test_derivation_raises_weight_by_two():
    p = parse_polynomial("E2*E4 - 5*E6")
    assert weight(p) == 6
    assert weight(ramanujan_derive(p)) == 8


# ------------------------------------------------------------ grading

def test_weight_and_depth():
    p = parse_polynomial("E2^2*E4 + E4^2")
    assert weight(p) == 8
    assert depth(p) == 2
    assert is_homogeneous(p)


def test_zero_polynomial():
    assert weight(as_poly(sp.Integer(0))) is None
    assert depth(as_poly(sp.Integer(0))) == 0


def test_inhomogeneous():
    assert not is_homogeneous(parse_polynomial("E2 + E4"))


def test_expand_discriminant():
    assert expand(parse_polynomial("(E4^3 - E6^2)/1728"), 10) == discriminant_series(10)


# ------------------------------------------------------------ parsing

@pytest.mark.parametrize("text", ["E8 + 1", "1/E4", "E4 +* E6", "1/0", "E4/0 + E6"])
def test_parse_rejects(text):
    with pytest.raises(SchemaError):
        parse_polynomial(text)
