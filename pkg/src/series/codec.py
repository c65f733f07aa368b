"""
JSON form of QSeries.

    {"variable": "q", "two_pi_i_power": e, "truncation": N,
     "coefficients": ["num/den", ...]}

Coefficients are written with str(Fraction), so integers appear without a
denominator.  Both forms parse back exactly.
"""
import re
from fractions import Fraction
from typing import Any, Dict, List

from src.errors import SchemaError
from src.series.qseries import QSeries

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")

SCHEMA = (
    '{"variable": "q", "two_pi_i_power": <int>, "truncation": <int>, '
    '"coefficients": ["num/den", ...]}'
)


def format_fraction(value: Fraction) -> str:
    return str(Fraction(value))


def parse_fraction(text: str) -> Fraction:
    if not isinstance(text, str) or not _FRACTION_RE.match(text.strip()):
        raise SchemaError(f"not an exact fraction string: {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError as exc:
        raise SchemaError(f"zero denominator in {text!r}") from exc


def to_json(series: QSeries, variable: str = "q") -> Dict[str, Any]:
    return {
        "variable": variable,
        "two_pi_i_power": series.two_pi_i_power,
        "truncation": series.truncation,
        "coefficients": [format_fraction(c) for c in series.coefficients],
    }


def from_json(data: Dict[str, Any]) -> QSeries:
    """
    Parse the documented series schema.

    Raises:
        SchemaError: on missing keys or malformed coefficients
    """
    try:
        grade = data["two_pi_i_power"]
        truncation = data["truncation"]
        raw: List[str] = data["coefficients"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"series JSON must look like {SCHEMA}") from exc
    if not isinstance(grade, int) or not isinstance(truncation, int) or truncation < 0:
        raise SchemaError("two_pi_i_power and truncation must be integers")
    if len(raw) != truncation + 1:
        raise SchemaError(f"expected {truncation + 1} coefficients, got {len(raw)}")
    return QSeries(tuple(parse_fraction(c) for c in raw), grade)

