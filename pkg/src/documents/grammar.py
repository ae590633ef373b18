"""
Text grammar for scalars, K elements and polynomials
Expressions in t, i and e such as "(t^2+1)+(i t-2)e" or "-9/5i-(18/35)i e". The
coefficient of e is the secondary part, so "w e" denotes eta * w. Any decimal
literal switches the value to the approximate backend.
"""

import math
from fractions import Fraction
from typing import Optional, Union

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from config.config import get_config
from kinematics.algebra import (
    INFINITY,
    Backend,
    ComplexScalar,
    CPoly,
    KElement,
    MotionPolynomial,
    format_real,
)
from kinematics.symbolic import T, from_rational
from utils.error_handling import DocumentError

E = sympy.Symbol("e", commutative=True)

_TRANSFORMS = standard_transformations + (
    implicit_multiplication_application,
    convert_xor,
)
_LOCALS = {"i": sympy.I, "I": sympy.I, "t": T, "e": E}


def _parse(text: str) -> sympy.Expr:
    if not isinstance(text, str) or not text.strip():
        raise DocumentError("empty expression")
    try:
        expr = parse_expr(text, local_dict=dict(_LOCALS), transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as e:
        raise DocumentError(f"cannot parse {text!r}: {e}") from e
    except Exception as e:  # tokenizer errors surface under several names
        raise DocumentError(f"cannot parse {text!r}: {e}") from e
    extra = expr.free_symbols - {T, E}
    if extra:
        raise DocumentError(f"unknown symbols {sorted(map(str, extra))} in {text!r}")
    return sympy.expand(expr)


def _backend_for(expr: sympy.Expr, backend: Optional[Backend]) -> Backend:
    if backend is not None:
        return backend
    if expr.atoms(sympy.Float):
        return Backend.APPROX
    return Backend(get_config().numerics.backend)


def _scalar(value, backend: Backend) -> ComplexScalar:
    re, im = sympy.sympify(value).as_real_imag()
    if backend is Backend.APPROX:
        return ComplexScalar(float(re), float(im), backend)
    if not (re.is_Rational and im.is_Rational):
        raise DocumentError(f"coefficient {value} is not a Gaussian rational")
    return ComplexScalar(from_rational(re), from_rational(im), backend)


def _cpoly(expr: sympy.Expr, backend: Backend) -> CPoly:
    if expr == 0:
        return CPoly.zero(backend)
    try:
        poly = sympy.Poly(expr, T)
    except sympy.PolynomialError as e:
        raise DocumentError(f"{expr} is not a polynomial in t") from e
    if poly.free_symbols - {T}:
        raise DocumentError(f"{expr} is not a polynomial in t")
    coeffs = list(reversed(poly.all_coeffs()))
    return CPoly(tuple(_scalar(c, backend) for c in coeffs), backend)


def _split_e(expr: sympy.Expr) -> tuple[sympy.Expr, sympy.Expr]:
    if expr.has(E) and sympy.degree(expr, E) > 1:
        raise DocumentError("powers of e above one vanish; write the value without e^2")
    return expr.coeff(E, 0), expr.coeff(E, 1)


def parse_scalar(text: str, backend: Optional[Backend] = None) -> ComplexScalar:
    expr = _parse(text)
    if expr.free_symbols:
        raise DocumentError(f"{text!r} is not a constant")
    return _scalar(expr, _backend_for(expr, backend))


def parse_cpoly(text: str, backend: Optional[Backend] = None) -> CPoly:
    expr = _parse(text)
    if expr.has(E):
        raise DocumentError(f"{text!r} is a motion polynomial, expected a complex one")
    return _cpoly(expr, _backend_for(expr, backend))


def parse_kelement(text: str, backend: Optional[Backend] = None) -> KElement:
    expr = _parse(text)
    if expr.has(T):
        raise DocumentError(f"{text!r} depends on t")
    backend = _backend_for(expr, backend)
    z, w = _split_e(expr)
    return KElement(_scalar(z, backend), _scalar(w, backend))


def parse_motion(text: str, backend: Optional[Backend] = None) -> MotionPolynomial:
    expr = _parse(text)
    backend = _backend_for(expr, backend)
    z, w = _split_e(expr)
    return MotionPolynomial.from_parts(_cpoly(z, backend), _cpoly(w, backend))


def parse_parameter(text: str) -> Union[Fraction, float]:
    """Real parameter: 'inf' or 'oo' of either sign is infinity, 'p/q' exact, decimals float"""
    cleaned = text.strip().lower()
    if cleaned.lstrip("+-") in ("inf", "infinity", "oo"):
        return INFINITY
    try:
        return Fraction(cleaned) if "." not in cleaned and "e" not in cleaned else float(cleaned)
    except ValueError as e:
        raise DocumentError(f"cannot parse parameter {text!r}") from e


def format_parameter(t: Union[Fraction, float, int]) -> str:
    if isinstance(t, float) and math.isinf(t):
        return "inf"
    if isinstance(t, int):
        t = Fraction(t)
    return format_real(t)


def format_scalar(c: ComplexScalar) -> str:
    return str(c)


def format_kelement(k: KElement) -> str:
    return str(k)


def format_cpoly(p: CPoly) -> str:
    return str(p)


def format_motion(P: MotionPolynomial) -> str:
    return str(P)
