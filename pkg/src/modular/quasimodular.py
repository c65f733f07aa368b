"""
The level-one quasi-modular ring Q[E2, E4, E6] as formal polynomials.

Polynomials are sympy Poly objects over QQ in the generators E2, E4, E6
of weights 2, 4, 6.  ``expand`` maps them to exact q-series.
"""
import logging
from fractions import Fraction
from typing import Dict, Optional, Tuple

import sympy as sp
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import CoercionFailed

from src.errors import SchemaError
from src.modular.eisenstein import eisenstein_E
from src.series.qseries import QSeries

logger = logging.getLogger(__name__)

E2, E4, E6 = sp.symbols("E2 E4 E6")
GENERATORS = (E2, E4, E6)
WEIGHTS = {E2: 2, E4: 4, E6: 6}

# D = q d/dq on the generators
RAMANUJAN_RULES = {
    E2: (E2**2 - E4) / 12,
    E4: (E2 * E4 - E6) / 3,
    E6: (E2 * E6 - E4**2) / 2,
}

_TRANSFORMS = standard_transformations + (convert_xor,)


def as_poly(expr) -> sp.Poly:
    """Coerce an expression or Poly to a Poly over QQ in E2, E4, E6."""
    if isinstance(expr, sp.Poly):
        return sp.Poly(expr.as_expr(), *GENERATORS, domain=sp.QQ)
    return sp.Poly(sp.sympify(expr), *GENERATORS, domain=sp.QQ)


def parse_polynomial(text: str) -> sp.Poly:
    """
    Parse text such as ``E4^3 - E6^2`` into a Poly.

    Raises:
        SchemaError: for unknown symbols or non-polynomial input
    """
    local = {str(g): g for g in GENERATORS}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, sp.SympifyError) as exc:
        raise SchemaError(f"cannot parse polynomial {text!r}: {exc}") from exc
    if expr.has(sp.zoo, sp.oo, -sp.oo, sp.nan):
        raise SchemaError(f"{text!r} is not finite")
    extra = expr.free_symbols - set(GENERATORS)
    if extra:
        raise SchemaError(f"unknown symbols {sorted(map(str, extra))}; use E2, E4, E6")
    try:
        return as_poly(expr)
    except (sp.PolynomialError, CoercionFailed, ZeroDivisionError) as exc:
        raise SchemaError(f"{text!r} is not a polynomial in E2, E4, E6") from exc


def ramanujan_derive(p) -> sp.Poly:
    """Apply D = q d/dq through the Ramanujan rules, extended as a derivation."""
    poly = as_poly(p)
    result = sp.Integer(0)
    for gen in GENERATORS:
        partial = poly.diff(gen).as_expr()
        if partial != 0:
            result += partial * RAMANUJAN_RULES[gen]
    return as_poly(sp.expand(result))


def weight(p) -> Optional[int]:
    """Largest monomial weight; None for the zero polynomial."""
    poly = as_poly(p)
    if poly.is_zero:
        return None
    return max(2 * a + 4 * b + 6 * c for (a, b, c), _ in poly.terms())


def is_homogeneous(p) -> bool:
    poly = as_poly(p)
    weights = {2 * a + 4 * b + 6 * c for (a, b, c), _ in poly.terms()}
    return len(weights) <= 1


def depth(p) -> int:
    """Degree in E2."""
    poly = as_poly(p)
    if poly.is_zero:
        return 0
    return poly.degree(E2)


def to_fraction(value) -> Fraction:
    rational = sp.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def expand(p, truncation: int) -> QSeries:
    """Image of a polynomial under E_{2k} -> its q-expansion (grade 0)."""
    poly = as_poly(p)
    base = {
        E2: eisenstein_E(1, truncation),
        E4: eisenstein_E(2, truncation),
        E6: eisenstein_E(3, truncation),
    }
    powers: Dict[Tuple[sp.Symbol, int], QSeries] = {}

    def power(gen, k: int) -> QSeries:
        key = (gen, k)
        if key not in powers:
            powers[key] = base[gen].power(k)
        return powers[key]

    total = QSeries.zero(truncation)
    for (a, b, c), coeff in poly.terms():
        term = power(E2, a).mul(power(E4, b)).mul(power(E6, c))
        total = total.add(term.scale(to_fraction(poly.domain.to_sympy(coeff))))
    return total


def check_derivation(p, truncation: int) -> QSeries:
    """
    Difference between expand(D p) and q d/dq of expand(p).

    Zero through ``truncation`` exactly when the Ramanujan rules are consistent
    with the q-expansions.
    """
    lhs = expand(ramanujan_derive(p), truncation)
    rhs = expand(p, truncation).euler_derivative()
    return lhs.sub(rhs)
