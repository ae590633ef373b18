import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import pytest

# Ensure src is in python path
sys.path.append(str(Path(__file__).parent.parent / "src"))

from kinematics.algebra import ComplexScalar, CPoly, KElement, MotionPolynomial  # noqa: E402
from kinematics.linkage import chain_linkage, ladder_linkage  # noqa: E402


def gauss(re=0, im=0) -> ComplexScalar:
    return ComplexScalar.exact(Fraction(re), Fraction(im))


def kel(z: tuple, w: tuple) -> KElement:
    """Exact z + eta w from (re, im) pairs"""
    return KElement(gauss(*z), gauss(*w))


@pytest.fixture
def temp_workspace():
    """Create a temporary workspace directory"""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir)


@pytest.fixture
def ellipse_motion() -> MotionPolynomial:
    """(t^2 + 1) + eta (i t - 2): the origin traces (x + 1)^2 + 4 y^2 = 1"""
    Z = CPoly.of([1, 0, 1])
    W = CPoly((gauss(-2), gauss(0, 1)))
    return MotionPolynomial.from_parts(Z, W)


@pytest.fixture
def ellipse_factors() -> tuple[KElement, ...]:
    """k1 = i + eta i / 2, k2 = i - eta i / 2, k3 = -i - eta i with product (t - i) P"""
    return (
        kel((0, 1), (0, Fraction(1, 2))),
        kel((0, 1), (0, Fraction(-1, 2))),
        kel((0, -1), (0, -1)),
    )


@pytest.fixture
def ellipse_l() -> KElement:
    return kel((0, Fraction(-9, 5)), (0, Fraction(-18, 35)))


@pytest.fixture
def ellipse_chain(ellipse_factors):
    return chain_linkage(ellipse_factors)


@pytest.fixture
def ellipse_ladder(ellipse_factors, ellipse_l):
    return ladder_linkage(ellipse_factors, ellipse_l)


@pytest.fixture
def ellipse_curve_json() -> str:
    return '{"schema": "linkforge/curve@1", "f": "-2", "g": "t", "h": "t^2+1"}'


@pytest.fixture
def ellipse_factors_json() -> str:
    return (
        '{"schema": "linkforge/factors@1", '
        '"factors": ["i+(1/2)i e", "i-(1/2)i e", "-i-i e"]}'
    )
