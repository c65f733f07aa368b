"""
Tests for the series JSON codec.
"""
from fractions import Fraction

import pytest

from src.errors import SchemaError
from src.series.codec import from_json, parse_fraction, to_json
from src.series.qseries import QSeries


@pytest.fixture
def sample():
    return QSeries.from_coefficients([1, Fraction(1, 2), -3], 2, two_pi_i_power=-2)


def test_to_json_layout(sample):
    data = to_json(sample)
    assert data == {
        "variable": "q",
        "two_pi_i_power": -2,
        "truncation": 2,
        "coefficients": ["1", "1/2", "-3"],
    }


def test_json_form_preserves_series(sample):
    restored = from_json(to_json(sample))
    assert restored == sample
    assert restored.grade == -2


def test_parse_fraction_accepts_integers_and_ratios():
    assert parse_fraction("-7") == -7
    assert parse_fraction("25/12") == Fraction(25, 12)


@pytest.mark.parametrize("text", ["1.5", "a/b", "", "1/0"])
def test_parse_fraction_rejects(text):
    with pytest.raises(SchemaError):
        parse_fraction(text)


def test_from_json_missing_key():
    with pytest.raises(SchemaError):
        from_json({"truncation": 0, "coefficients": ["1"]})


def test_from_json_length_mismatch():
    with pytest.raises(SchemaError):
        from_json({"two_pi_i_power": 0, "truncation": 3, "coefficients": ["1"]})


def test_from_json_rejects_non_object():
    with pytest.raises(SchemaError):
        from_json(["1", "2"])
