"""
Tests for exact truncated q-series.
"""
import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import DomainError, MixedGradeError, NonAdmissibleError, NonUnitError
from src.series.qseries import QSeries, multiply_coefficients

N = 8

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
series = st.lists(fractions, min_size=N + 1, max_size=N + 1).map(
    lambda cs: QSeries.from_coefficients(cs, N)
)


@pytest.fixture
def geometric():
    """1/(1 - q) through q^8."""
    return QSeries.from_coefficients([1] * (N + 1), N)


# ------------------------------------------------------------ construction

def test_from_coefficients_pads_with_zeros():
    s = QSeries.from_coefficients([1, 2], 4)
    assert s.truncation == 4
    assert list(s.coefficients) == [1, 2, 0, 0, 0]


def test_from_coefficients_cuts_to_truncation():
    s = QSeries.from_coefficients([1, 2, 3, 4], 1)
    assert list(s.coefficients) == [1, 2]


def test_rejects_float_coefficients():
    with pytest.raises(TypeError):
        QSeries.from_coefficients([1.5], 0)


def test_zero_equality_ignores_grade():
    assert QSeries.zero(3, 2) == QSeries.zero(3, 0)
    assert hash(QSeries.zero(3, 2)) == hash(QSeries.zero(3, 0))
    assert QSeries.one(3) != QSeries.one(3).regrade(1)


# ------------------------------------------------------------ ring operations

def test_add_mixed_grades_raises():
    with pytest.raises(MixedGradeError):
        QSeries.one(3).add(QSeries.one(3).regrade(1))


def test_add_zero_of_other_grade_is_allowed():
    s = QSeries.one(3).regrade(2)
    assert s.add(QSeries.zero(3)) == s


def test_mul_adds_grades_and_takes_min_truncation(geometric):
    other = QSeries.from_coefficients([1, -1], 3, two_pi_i_power=1)
    product = geometric.mul(other)
    assert product.truncation == 3
    assert product.grade == 1
    assert list(product.coefficients) == [1, 0, 0, 0]


def test_power_of_one_minus_q():
    s = QSeries.from_coefficients([1, -1], 4)
    assert list(s.power(3).coefficients) == [1, -3, 3, -1, 0]


def test_long_product_is_exact():
    a = [Fraction(1)] * 600
    product = multiply_coefficients(a, a, 600)
    assert product == [Fraction(n + 1) for n in range(600)]


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert a.add(b) == b.add(a)
    assert a.mul(b) == b.mul(a)
    assert a.mul(b).mul(c) == a.mul(b.mul(c))
    assert a.mul(b.add(c)) == a.mul(b).add(a.mul(c))
    assert a.sub(a).is_zero()


# ------------------------------------------------------------ inversion

def test_invert_geometric(geometric):
    inverse = geometric.invert()
    assert list(inverse.coefficients) == [1, -1] + [0] * (N - 1)


def test_invert_negates_grade():
    s = QSeries.constant(3, 2, two_pi_i_power=2)
    assert s.invert().grade == -2
    assert s.invert()[0] == Fraction(1, 3)


def test_invert_non_unit_raises():
    with pytest.raises(NonUnitError):
        QSeries.from_coefficients([0, 1], 3).invert()


@given(series)
def test_invert_is_two_sided(a):
    if a[0] == 0:
        a = a.add(QSeries.one(N))
    assert a.mul(a.invert()) == QSeries.one(N)


# ------------------------------------------------------------ exp / log

def test_exp_of_q():
    s = QSeries.monomial(1, 5).exp()
    assert list(s.coefficients) == [1, 1, Fraction(1, 2), Fraction(1, 6),
                                    Fraction(1, 24), Fraction(1, 120)]


def test_exp_needs_zero_constant():
    with pytest.raises(NonAdmissibleError):
        QSeries.one(3).exp()


def test_log_needs_unit_constant():
    with pytest.raises(NonAdmissibleError):
        QSeries.constant(2, 3).log()


@given(series)
def test_log_inverts_exp(a):
    a = QSeries((Fraction(0),) + a.coefficients[1:])
    assert a.exp().log() == a


# ------------------------------------------------------------ composition

def test_revert_of_q_over_one_minus_q():
    f = QSeries.from_coefficients([0] + [1] * N, N)
    g = f.revert()
    # inverse of q/(1-q) is q/(1+q)
    assert list(g.coefficients) == [0] + [(-1) ** (n + 1) for n in range(1, N + 1)]


@given(series)
def test_revert_then_compose_is_identity(a):
    coeffs = list(a.coefficients)
    coeffs[0] = Fraction(0)
    if coeffs[1] == 0:
        coeffs[1] = Fraction(1)
    f = QSeries.from_coefficients(coeffs, N)
    q = QSeries.monomial(1, N)
    assert f.compose(f.revert()) == q
    assert f.revert().compose(f) == q


def test_compose_rejects_constant_inner():
    with pytest.raises(NonAdmissibleError):
        QSeries.one(3).compose(QSeries.one(3))


def test_revert_rejects_missing_linear_term():
    with pytest.raises(NonAdmissibleError):
        QSeries.monomial(2, 4).revert()


# ------------------------------------------------------------ derivations

def test_theta_derivative_raises_grade():
    s = QSeries.from_coefficients([5, 1, 1], 2)
    d = s.theta_derivative()
    assert d.grade == 1
    assert list(d.coefficients) == [0, 1, 2]


def test_theta_integral_inverts_derivative():
    s = QSeries.from_coefficients([0, 3, Fraction(1, 2), 7], 3, two_pi_i_power=1)
    assert s.theta_integral().theta_derivative() == s


def test_theta_integral_needs_zero_constant():
    with pytest.raises(NonAdmissibleError):
        QSeries.one(3).theta_integral()


@given(series, series)
def test_leibniz_rule(a, b):
    lhs = a.mul(b).euler_derivative()
    rhs = a.euler_derivative().mul(b).add(a.mul(b.euler_derivative()))
    assert lhs == rhs


# ------------------------------------------------------------ evaluation

def test_evaluate_constant_with_grade():
    s = QSeries.constant(1, 3, two_pi_i_power=1)
    assert s(1j) == pytest.approx(2j * 3.141592653589793)


def test_evaluate_geometric_series(geometric):
    tau = 2j
    result = geometric.evaluate(tau)
    q = cmath.exp(2j * cmath.pi * tau)
    assert result.value.to_complex() == pytest.approx(1 / (1 - q), rel=1e-14)
    assert result.tail_bound < 1e-40


def test_evaluate_lower_half_plane_raises(geometric):
    with pytest.raises(DomainError):
        geometric.evaluate(-1j)


def test_evaluate_near_real_axis_stays_finite():
    s = QSeries.from_coefficients([1, 240, 2160, 6720], 3)
    result = s.evaluate(1e-18j)
    assert result.value.to_complex() == pytest.approx(1 + 240 + 2160 + 6720)
    assert result.tail_bound > 1e15


def test_evaluate_where_q_rounds_to_one_raises():
    with pytest.raises(DomainError):
        QSeries.one(3).evaluate(1e-60j)


def test_evaluate_coefficient_beyond_double_range():
    s = QSeries.from_coefficients([0, 0, 0, 0, 0, Fraction(10 ** 400)], 5)
    q = cmath.exp(2j * cmath.pi * 2j)
    # 10^400 q^5 = 10^400 e^{-20π}, still far too large for a double
    with pytest.raises(DomainError):
        s.evaluate(2j)
    assert s.scale(Fraction(1, 10 ** 390))(2j) == pytest.approx(1e10 * q ** 5, rel=1e-12)


def test_evaluate_huge_coefficient_with_tiny_weight():
    s = QSeries.monomial(100, 100, coefficient=Fraction(10 ** 350))
    expected = math.exp(350 * math.log(10) - 400 * math.pi)
    assert s(2j) == pytest.approx(expected, rel=1e-9)


def test_zero_series_evaluates_to_zero():
    assert QSeries.zero(10, 3)(1j) == 0


@given(series, series, st.floats(min_value=-0.5, max_value=0.5),
       st.floats(min_value=0.8, max_value=3.0))
def test_evaluate_is_linear(a, b, x, y):
    tau = complex(x, y)
    lhs = a.add(b)(tau)
    rhs = a(tau) + b(tau)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(a(tau)), abs(b(tau)))
