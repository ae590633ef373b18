"""
Sympy bridge for the exact backend
Conversions between Fraction based scalars/polynomials and sympy's Gaussian
rational domain, plus the exact linear solve and real-root isolation used by the
factorization and collision code.
"""

from fractions import Fraction
from typing import Sequence, Union

import sympy
from sympy import I, QQ, QQ_I, Poly, Rational
from sympy.polys.matrices import DomainMatrix

from .algebra import Backend, ComplexScalar, CPoly

T = sympy.Symbol("t", real=True)


def to_rational(x: Fraction) -> Rational:
    return Rational(x.numerator, x.denominator)


def from_rational(x) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


def to_sympy(c: ComplexScalar) -> sympy.Expr:
    if c.backend is not Backend.EXACT:
        raise ValueError("sympy bridge expects exact scalars")
    return to_rational(c.re) + I * to_rational(c.im)


def from_sympy(expr) -> ComplexScalar:
    """Exact scalar from a sympy Gaussian rational expression"""
    expr = sympy.expand(sympy.sympify(expr))
    re, im = expr.as_real_imag()
    return ComplexScalar(from_rational(re), from_rational(im), Backend.EXACT)


def to_poly(p: CPoly, domain=QQ_I) -> Poly:
    """Sympy Poly in T (descending storage) from an exact CPoly"""
    if p.is_zero():
        return Poly(0, T, domain=domain)
    return Poly([to_sympy(c) for c in reversed(p.coeffs)], T, domain=domain)


def from_poly(poly: Poly) -> CPoly:
    coeffs = list(reversed(poly.all_coeffs()))
    return CPoly(tuple(from_sympy(c) for c in coeffs), Backend.EXACT)


def gaussian_linear_factors(p: CPoly) -> list[tuple[ComplexScalar, int]]:
    """
    Factor p over Q(i).

    Returns:
        (root, multiplicity) pairs, or raises ValueError when a factor of degree
        larger than one remains.
    """
    _, factors = sympy.factor_list(to_poly(p).as_expr(), T, gaussian=True)
    roots: list[tuple[ComplexScalar, int]] = []
    for factor, mult in factors:
        fp = Poly(factor, T)
        if fp.degree() == 0:
            continue
        if fp.degree() != 1:
            raise ValueError(f"irreducible factor of degree {fp.degree()}: {factor}")
        root = -fp.nth(0) / fp.nth(1)
        roots.append((from_sympy(root), int(mult)))
    return roots


def solve_pivoted(
    columns: Sequence[CPoly], target: CPoly, size: int
) -> Union[list[ComplexScalar], None]:
    """
    Solve sum_j w_j columns[j] = target over Q(i) by reduced row echelon form.

    Free variables (non-pivot columns) are set to zero, so pivots are taken in
    index order. Returns None when the system is inconsistent.
    """
    n = len(columns)
    rows = []
    for r in range(size):
        row = [QQ_I.from_sympy(to_sympy(col[r])) for col in columns]
        row.append(QQ_I.from_sympy(to_sympy(target[r])))
        rows.append(row)
    augmented = DomainMatrix(rows, (size, n + 1), QQ_I)
    reduced, pivots = augmented.rref()
    if n in pivots:
        return None
    values = reduced.to_Matrix()
    solution = [ComplexScalar.exact(0, 0) for _ in range(n)]
    for row, col in enumerate(pivots):
        solution[col] = from_sympy(values[row, n])
    return solution


def real_roots_exact(p: CPoly) -> list[Union[Fraction, float]]:
    """
    Distinct real roots of a real polynomial with rational coefficients.

    Rational roots are returned as Fractions; irrational roots are isolated
    exactly and returned as floats.
    """
    if p.degree < 1:
        return []
    poly = Poly([to_rational(c.re) for c in reversed(p.coeffs)], T, domain=QQ)
    out: list[Union[Fraction, float]] = []
    previous = None
    # real_roots() is sorted and repeats multiple roots
    for root in poly.real_roots():
        if previous is not None and root == previous:
            continue
        previous = root
        if root.is_Rational:
            out.append(from_rational(root))
        else:
            out.append(float(root.evalf(30)))
    return out
