"""
Rational curves
A bounded rational curve (f / h, g / h) is the orbit of the origin under the motion
polynomial h + eta (f + i g). Multiplying by a drawing multiplier C with
C conj(C) = h keeps that orbit and lowers the linkage size.
"""

from dataclasses import dataclass
from typing import Literal, Optional

from utils.error_handling import NotBounded
from utils.logger import get_logger

from .algebra import (
    ComplexScalar,
    CPoly,
    MotionPolynomial,
    PlanePoint,
    as_parameter,
    is_infinite,
    unit_i,
)
from .factor import drawing_multiplier

logger = get_logger(__name__)


@dataclass(frozen=True)
class CurveSpec:
    """Parametrization (f / h, g / h) + offset with real polynomials f, g, h"""

    f: CPoly
    g: CPoly
    h: CPoly
    offset: Optional[PlanePoint] = None

    def __post_init__(self):
        for name in ("f", "g", "h"):
            p = getattr(self, name)
            if not p.is_real():
                raise NotBounded(f"{name} = {p} is not a real polynomial")
        if self.h.is_zero():
            raise NotBounded("denominator h is zero")
        if self.h.degree < max(self.f.degree, self.g.degree):
            raise NotBounded("numerator degree exceeds denominator degree")

    @property
    def backend(self):
        return self.h.backend

    @property
    def degree(self) -> int:
        return self.h.degree

    def normalized(self) -> "CurveSpec":
        """
        Monic h with deg h > deg f, deg g. When the degrees tie, the limit point at
        t = infinity is moved to the origin and kept as the offset.
        """
        lead = self.h.leading()
        f, g, h = self.f * (1 / lead), self.g * (1 / lead), self.h.monic()
        offset = self.offset or PlanePoint.origin(self.backend)
        if max(f.degree, g.degree) == h.degree:
            px, py = f[h.degree], g[h.degree]
            f, g = f - h * px, g - h * py
            offset = PlanePoint(offset.u + ComplexScalar(px.re, py.re, self.backend))
            logger.debug(f"translated curve by {offset}")
        return CurveSpec(f, g, h, offset)

    def point_at(self, t) -> PlanePoint:
        """Point of the curve including the offset"""
        offset = self.offset.u if self.offset else ComplexScalar.of(0, self.backend)
        if is_infinite(t):
            return self.normalized().offset
        s = as_parameter(t, self.backend)
        den = self.h.eval(s)
        x, y = (self.f.eval(s) / den).re, (self.g.eval(s) / den).re
        return PlanePoint(ComplexScalar(x, y, self.backend) + offset)


def curve_motion(curve: CurveSpec) -> MotionPolynomial:
    """h + eta (f + i g) for the normalized curve; the offset is not part of the motion"""
    c = curve.normalized()
    W = c.f + c.g * unit_i(c.backend)
    return MotionPolynomial.from_parts(c.h, W)


def apply_drawing_multiplier(
    P: MotionPolynomial, variant: Literal["upper", "lower"] = "upper"
) -> tuple[CPoly, MotionPolynomial]:
    """
    (C, C * P) with C conj(C) = Z for a motion polynomial with real primal part Z.

    Raises:
        NotBounded: the primal part is not real
        RealRoot: the primal part has a real root
    """
    if not P.primal.is_real():
        raise NotBounded(f"drawing multiplier needs a real primal part, got {P.primal}")
    C = drawing_multiplier(P.primal, variant)
    if C.backend is not P.backend:
        P = P.to_approx()
    return C, C * P


def drawing_motion(
    curve: CurveSpec, variant: Literal["upper", "lower"] = "upper"
) -> tuple[CPoly, MotionPolynomial]:
    """(C, C * P) with C conj(C) = h and P = curve_motion(curve)"""
    return apply_drawing_multiplier(curve_motion(curve), variant)
