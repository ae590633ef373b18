import random
from fractions import Fraction

import numpy as np
import pytest

from kinematics.algebra import Backend, ComplexScalar, CPoly, KElement, MotionPolynomial
from kinematics.curves import CurveSpec, apply_drawing_multiplier, curve_motion, drawing_motion
from kinematics.factor import (
    RootPermutation,
    build_Q,
    drawing_multiplier,
    factor_motion_polynomial,
    gcd_of_Q,
    is_factorizable,
    max_matching,
    minimal_R,
    q_matrix,
    solve_secondary,
    strip_real_content,
)
from kinematics.roots import c_gcd
from tests.conftest import gauss
from utils.error_handling import Inconsistent, NotBounded, RealCommonFactor, RealRoot


class TestEllipseFactorization:
    def test_motion_needs_real_multiplier(self, ellipse_motion):
        result = factor_motion_polynomial(ellipse_motion)
        assert result.backend is Backend.EXACT
        assert result.R == CPoly.of([1, 0, 1])
        assert len(result.factors) == 4
        assert result.product() == result.R * ellipse_motion

    def test_drawing_multiplier_removes_R(self, ellipse_motion):
        C, CP = apply_drawing_multiplier(ellipse_motion)
        assert C == CPoly.linear(gauss(0, 1))
        result = factor_motion_polynomial(CP)
        assert result.R == CPoly.one()
        assert len(result.factors) == 3
        assert result.product() == CP

    def test_no_permutation_factors_without_R(self, ellipse_motion):
        W = ellipse_motion.secondary
        for z in ((gauss(0, 1), gauss(0, -1)), (gauss(0, -1), gauss(0, 1))):
            assert not is_factorizable(RootPermutation(z), W)

    def test_minimal_R(self, ellipse_motion):
        assert minimal_R(ellipse_motion.primal, ellipse_motion.secondary) == CPoly.of([1, 0, 1])


def test_build_Q_and_gcd():
    z = RootPermutation((gauss(0, 1), gauss(0, -1)))
    assert build_Q(z, 0) == CPoly.linear(gauss(0, -1))
    assert build_Q(z, 1) == CPoly.linear(gauss(0, -1))
    assert len(max_matching(z)) == 1
    assert gcd_of_Q(z) == CPoly.linear(gauss(0, -1))
    with pytest.raises(IndexError):
        build_Q(z, 2)


def test_gcd_of_Q_without_conjugates_is_one():
    z = RootPermutation((gauss(1, 1), gauss(2, 1), gauss(-1, 3)))
    assert len(max_matching(z)) == 0
    assert gcd_of_Q(z) == CPoly.one()


def test_determinant_identity():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        n = int(rng.integers(2, 6))
        values = rng.normal(size=n) + 1j * rng.normal(size=n)
        z = RootPermutation(tuple(ComplexScalar.from_complex(v) for v in values))
        expected = np.prod(
            [np.conj(values[i]) - values[j] for i in range(n) for j in range(i + 1, n)]
        )
        M = q_matrix(z)
        det = np.linalg.det(M)
        # Hadamard bound of the determinant
        scale = max(1.0, abs(expected), float(np.prod(np.linalg.norm(M, axis=0))))
        assert abs(det - expected) / scale < 1e-9


def test_solve_secondary_reproduces_target():
    z = RootPermutation((gauss(1, 1), gauss(2, -1), gauss(0, 3)))
    target = CPoly((gauss(1, 2), gauss(-3), gauss(0, 1)))
    w = solve_secondary(z, target)
    combined = CPoly.zero()
    for j, wj in enumerate(w):
        combined = combined + build_Q(z, j) * wj
    assert combined == target


def test_solve_secondary_rejects_high_degree_target():
    z = RootPermutation((gauss(1, 1), gauss(2, -1)))
    with pytest.raises(Inconsistent):
        solve_secondary(z, CPoly.of([0, 0, 1]))


def test_random_products_factor_back():
    rng = np.random.default_rng(5)
    for _ in range(10):
        n = int(rng.integers(1, 4))
        ks = []
        for _ in range(n):
            z = complex(rng.normal(), abs(rng.normal()) + 0.5)
            w = complex(*rng.normal(size=2))
            ks.append((z, w))
        factors = [
            KElement(ComplexScalar.from_complex(z), ComplexScalar.from_complex(w)) for z, w in ks
        ]
        P = MotionPolynomial.product(factors, Backend.APPROX)
        result = factor_motion_polynomial(P)
        assert result.product().close_to(result.R * P, rel=1e-6)


def test_irrational_roots_fall_back_to_approx():
    P = MotionPolynomial.from_parts(CPoly.of([2, 0, 1]), CPoly.of([1, 1]))
    result = factor_motion_polynomial(P)
    assert result.backend is Backend.APPROX
    assert result.product().close_to(result.R * P.to_approx(), rel=1e-6)


def test_unbounded_inputs_are_rejected():
    real_roots = MotionPolynomial.from_parts(CPoly.of([-1, 0, 1]), CPoly((gauss(0, 1),)))
    with pytest.raises(NotBounded):
        factor_motion_polynomial(real_roots)
    not_monic = MotionPolynomial.from_parts(CPoly.of([1, 0, 2]))
    with pytest.raises(NotBounded):
        factor_motion_polynomial(not_monic)


def test_real_common_factor_must_be_stripped():
    h = CPoly.of([1, 0, 1])
    P = MotionPolynomial.from_parts(h * CPoly.of([4, 0, 1]), h * CPoly.of([1]))
    with pytest.raises(RealCommonFactor):
        factor_motion_polynomial(P)
    S, reduced = strip_real_content(P)
    assert S == h
    assert reduced == MotionPolynomial.from_parts(CPoly.of([4, 0, 1]), CPoly.of([1]))


def test_drawing_multiplier_variants():
    h = CPoly.of([1, 0, 1]) * CPoly.of([4, 0, 1])
    upper = drawing_multiplier(h, "upper")
    lower = drawing_multiplier(h, "lower")
    assert upper * upper.conj() == h
    assert lower == upper.conj()
    with pytest.raises(RealRoot):
        drawing_multiplier(CPoly.of([-1, 0, 1]))


def test_curve_motion_of_ellipse(ellipse_motion):
    curve = CurveSpec(CPoly.of([-2]), CPoly.of([0, 1]), CPoly.of([1, 0, 1]))
    assert curve_motion(curve) == ellipse_motion
    C, CP = drawing_motion(curve)
    assert C * ellipse_motion == CP


def test_curve_normalization_moves_limit_point():
    # (2 t^2 + 1, t) / (t^2 + 1) tends to (2, 0)
    curve = CurveSpec(CPoly.of([1, 0, 2]), CPoly.of([0, 1]), CPoly.of([1, 0, 1]))
    normalized = curve.normalized()
    assert normalized.offset.to_floats() == (2.0, 0.0)
    assert normalized.f == CPoly.of([-1])
    assert curve.point_at(1).to_floats() == (1.5, 0.5)


def test_curve_rejects_improper_parametrization():
    with pytest.raises(NotBounded):
        CurveSpec(CPoly.of([0, 0, 0, 1]), CPoly.of([1]), CPoly.of([1, 0, 1]))


def test_gcd_of_Q_matches_euclid():
    rng = random.Random(17)
    a, b = gauss(1, 2), gauss(-1, 1)
    pool = [a, a.conj(), b, b.conj()]
    for _ in range(500):
        n = rng.randint(2, 7)
        z = RootPermutation(tuple(rng.choice(pool) for _ in range(n)))
        G = c_gcd([build_Q(z, i) for i in range(n)])
        assert gcd_of_Q(z) == G
        assert G.degree == len(max_matching(z))


def test_span_of_Q_is_truncated_ideal_of_gcd():
    rng = random.Random(29)
    a, b = gauss(1, 2), gauss(-1, 1)
    pool = [a, a.conj(), b, b.conj()]

    def small():
        return gauss(rng.randint(-4, 4), rng.randint(-4, 4))

    for _ in range(150):
        n = rng.randint(2, 6)
        z = RootPermutation(tuple(rng.choice(pool) for _ in range(n)))
        G = gcd_of_Q(z)
        h = CPoly(tuple(small() for _ in range(n - G.degree)))
        assert is_factorizable(z, G * h)
        if G.degree >= 1:
            assert not is_factorizable(z, G * h + CPoly((gauss(1),)))


def _random_gaussian(rng, nonreal=False):
    re = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
    im = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
    if nonreal and im == 0:
        im = Fraction(1, 2)
    return ComplexScalar.exact(re, im)


def test_random_exact_products_factor_back():
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randint(1, 8)
        ks = [
            KElement(_random_gaussian(rng, nonreal=True), _random_gaussian(rng)) for _ in range(n)
        ]
        _, P = strip_real_content(MotionPolynomial.product(ks, Backend.EXACT))
        result = factor_motion_polynomial(P)
        assert result.backend is Backend.EXACT
        assert result.product() == result.R * P
        assert len(result.factors) == P.degree + result.R.degree
