from fractions import Fraction

import pytest

from documents.grammar import (
    format_cpoly,
    format_kelement,
    format_motion,
    format_parameter,
    format_scalar,
    parse_cpoly,
    parse_kelement,
    parse_motion,
    parse_parameter,
    parse_scalar,
)
from kinematics.algebra import INFINITY, Backend, CPoly
from tests.conftest import gauss, kel
from utils.error_handling import DocumentError


def test_parse_motion_polynomial(ellipse_motion):
    assert parse_motion("(t^2+1)+(i t-2)e") == ellipse_motion
    assert parse_motion("t^2 + 1 + i t e - 2 e") == ellipse_motion


def test_parse_kelement(ellipse_l, ellipse_factors):
    assert parse_kelement("-9/5i-(18/35)i e") == ellipse_l
    assert parse_kelement("i+(1/2)i e") == ellipse_factors[0]
    k = parse_kelement("3")
    assert k.z == gauss(3) and k.w.is_zero()


def test_parse_scalar_and_cpoly():
    assert parse_scalar("3/4-2i") == gauss(Fraction(3, 4), -2)
    assert parse_scalar("(1+i)^2") == gauss(0, 2)
    assert parse_cpoly("t^2+1") == CPoly.of([1, 0, 1])
    assert parse_cpoly("2(t-i)") == CPoly((gauss(0, -2), gauss(2)))


def test_decimals_switch_to_approx():
    c = parse_scalar("0.5+i")
    assert c.backend is Backend.APPROX
    assert c.to_complex() == complex(0.5, 1.0)
    assert parse_motion("t+0.25 i e").backend is Backend.APPROX


def test_explicit_backend_wins():
    assert parse_scalar("1/2", Backend.APPROX).re == 0.5


def test_text_forms_read_back(ellipse_motion, ellipse_factors, ellipse_l):
    for k in (*ellipse_factors, ellipse_l):
        assert parse_kelement(str(k)) == k
    assert parse_motion(str(ellipse_motion)) == ellipse_motion
    p = CPoly((gauss(0, -1), gauss(Fraction(1, 3), 2), gauss(-1)))
    assert parse_cpoly(str(p)) == p


@pytest.mark.parametrize(
    "parse, text",
    [
        (parse_scalar, ""),
        (parse_scalar, "(1+"),
        (parse_scalar, "x+1"),
        (parse_scalar, "sqrt(2)"),
        (parse_scalar, "t"),
        (parse_kelement, "e^2"),
        (parse_kelement, "t+e"),
        (parse_cpoly, "t e"),
    ],
)
def test_malformed_text_is_a_document_error(parse, text):
    with pytest.raises(DocumentError):
        parse(text)


def test_parameters():
    assert parse_parameter("inf") == INFINITY
    assert parse_parameter("oo") == INFINITY
    assert parse_parameter("-inf") == INFINITY
    assert parse_parameter(" -oo ") == INFINITY
    assert parse_parameter("-1/2") == Fraction(-1, 2)
    assert parse_parameter("0.25") == 0.25
    with pytest.raises(DocumentError):
        parse_parameter("x")
    assert format_parameter(INFINITY) == "inf"
    assert format_parameter(Fraction(-1, 2)) == "-1/2"
    assert format_parameter(3) == "3"


def test_text_forms(ellipse_motion):
    assert format_cpoly(CPoly.of([1, 0, 1])) == "t^2+1"
    assert format_kelement(kel((0, Fraction(-9, 5)), (0, Fraction(9, 20)))) == "0-9/5i+(0+9/20i)e"
    assert parse_motion(format_motion(ellipse_motion)) == ellipse_motion
    assert parse_scalar(format_scalar(gauss(1, -2))) == gauss(1, -2)
