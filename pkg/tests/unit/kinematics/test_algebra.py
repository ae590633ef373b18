from fractions import Fraction

import numpy as np
import pytest

from kinematics.algebra import (
    Backend,
    ComplexScalar,
    CPoly,
    KElement,
    MotionPolynomial,
    PlanePoint,
    act_point,
    k_inv,
    k_mul,
    midpt,
)
from tests.conftest import gauss, kel
from utils.error_handling import BackendMismatch, RealPrimal, ZeroPrimal


def _random_k(rng) -> KElement:
    z = complex(*rng.normal(size=2))
    w = complex(*rng.normal(size=2))
    return KElement(ComplexScalar.from_complex(z), ComplexScalar.from_complex(w))


def test_k_mul_is_associative():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b, c = (_random_k(rng) for _ in range(3))
        assert k_mul(k_mul(a, b), c).close_to(k_mul(a, k_mul(b, c)))


def test_k_mul_formula():
    a = kel((1, 2), (3, -1))
    b = kel((0, 1), (2, 2))
    # (z, w)(z', w') = (z z', conj(z) w' + z' w)
    expected_w = gauss(1, -2) * gauss(2, 2) + gauss(0, 1) * gauss(3, -1)
    assert k_mul(a, b) == KElement(gauss(1, 2) * gauss(0, 1), expected_w)


def test_inverse_is_real_multiple_of_identity():
    k = kel((2, 1), (Fraction(1, 3), -4))
    product = k_mul(k, k_inv(k))
    assert product.w.is_zero()
    assert product.z == gauss(5)


def test_inverse_of_zero_primal_raises():
    with pytest.raises(ZeroPrimal):
        k_inv(kel((0, 0), (1, 0)))


def test_action_is_a_right_action():
    rng = np.random.default_rng(3)
    u = PlanePoint.from_xy(0.3, -1.2, Backend.APPROX)
    for _ in range(20):
        a, b = _random_k(rng), _random_k(rng)
        left = act_point(k_mul(a, b), u)
        right = act_point(b, act_point(a, u))
        assert left.close_to(right)


def test_midpt_is_fixed_by_rotation():
    k = kel((0, 1), (0, Fraction(1, 2)))
    center = midpt(k)
    assert center == PlanePoint.from_xy(Fraction(-1, 4), 0)
    for t in (Fraction(2), Fraction(-1, 3), Fraction(0)):
        sigma = MotionPolynomial.linear(k).eval(t)
        assert act_point(sigma, center) == center


def test_midpt_rejects_real_primal_part():
    with pytest.raises(RealPrimal):
        midpt(kel((2, 0), (1, 0)))


def test_backends_do_not_mix():
    with pytest.raises(BackendMismatch):
        gauss(1, 1) + ComplexScalar.approx(1.0, 0.0)
    with pytest.raises(BackendMismatch):
        ComplexScalar.exact(1, 0) * ComplexScalar.approx(2.0)


def test_cpoly_arithmetic_and_division():
    p = CPoly.of([1, 0, 1])
    q = CPoly.linear(gauss(0, 1))
    quotient, remainder = divmod(p, q)
    assert remainder.is_zero()
    assert quotient == CPoly.linear(gauss(0, -1))
    assert (p * q).degree == 3
    assert p.is_real() and not q.is_real()
    assert str(p) == "t^2+1"


def test_motion_polynomial_product_rule(ellipse_motion, ellipse_factors):
    # (t - k1)(t - k2)(t - k3) = (t - i) P
    C = CPoly.linear(gauss(0, 1))
    assert MotionPolynomial.product(ellipse_factors, Backend.EXACT) == C * ellipse_motion


def test_motion_inverse_gives_norm_polynomial(ellipse_motion):
    product = ellipse_motion * ellipse_motion.inverse()
    assert product.secondary.is_zero()
    assert product.primal == ellipse_motion.primal * ellipse_motion.primal.conj()


def test_evaluation_at_infinity_is_leading_coefficient(ellipse_motion):
    assert ellipse_motion.eval(float("inf")) == ellipse_motion.leading()
    assert ellipse_motion.is_monic()


def test_scalar_text_is_canonical():
    assert str(gauss(Fraction(-9, 5), Fraction(1, 2))) == "-9/5+1/2i"
    assert str(kel((0, 1), (0, Fraction(-1, 2)))) == "0+1i+(0-1/2i)e"
