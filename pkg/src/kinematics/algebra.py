"""
Algebra K and Motion Polynomials
Exact (Gaussian rational) and approximate (double precision) complex scalars, the
algebra K = C[eta]/(eta^2, i eta + eta i), its action on the plane, complex
polynomials and motion polynomials in K[t].

Products follow the right action: act_point(a * b, u) applies a first, then b.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from config.config import approx_eps
from utils.error_handling import BackendMismatch, RealPrimal, ZeroPrimal

Real = Union[Fraction, float]
Number = Union[int, Fraction, float, complex]

INFINITY = math.inf


class Backend(str, Enum):
    """Numeric backend of a value"""

    EXACT = "exact"
    APPROX = "approx"


def is_infinite(t) -> bool:
    """True for the evaluation point t = infinity (None or +-inf)."""
    return t is None or (isinstance(t, float) and math.isinf(t))


def format_real(x: Real) -> str:
    """Canonical text of a real number: 'p/q' when exact, positional decimal otherwise."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return np.format_float_positional(float(x), unique=True, trim="0")


@dataclass(frozen=True, slots=True)
class ComplexScalar:
    """Complex number tagged with its backend"""

    re: Real
    im: Real = 0
    backend: Backend = Backend.EXACT

    def __post_init__(self):
        if self.backend is Backend.EXACT:
            for part in (self.re, self.im):
                if isinstance(part, float):
                    raise BackendMismatch(f"float {part!r} in exact scalar")
            object.__setattr__(self, "re", Fraction(self.re))
            object.__setattr__(self, "im", Fraction(self.im))
        else:
            object.__setattr__(self, "re", float(self.re))
            object.__setattr__(self, "im", float(self.im))

    @classmethod
    def exact(cls, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        return cls(Fraction(re), Fraction(im), Backend.EXACT)

    @classmethod
    def approx(cls, re: float = 0.0, im: float = 0.0):
        return cls(float(re), float(im), Backend.APPROX)

    @classmethod
    def from_complex(cls, value: complex):
        return cls(value.real, value.imag, Backend.APPROX)

    @classmethod
    def of(cls, value: Number, backend: Backend) -> "ComplexScalar":
        """Lift a plain Python number into the given backend."""
        if isinstance(value, ComplexScalar):
            if value.backend is not backend:
                raise BackendMismatch(f"{value} is not in backend {backend.value}")
            return value
        if backend is Backend.EXACT:
            if isinstance(value, (float, complex)):
                raise BackendMismatch(f"float {value!r} in exact backend")
            return cls(Fraction(value), Fraction(0), backend)
        value = complex(value)
        return cls(value.real, value.imag, backend)

    # coercion and arithmetic

    def _coerce(self, other) -> "ComplexScalar":
        if isinstance(other, ComplexScalar):
            if other.backend is not self.backend:
                raise BackendMismatch(
                    f"cannot combine {self.backend.value} and {other.backend.value}"
                )
            return other
        if isinstance(other, (int, Fraction, float, complex)):
            return ComplexScalar.of(other, self.backend)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ComplexScalar(self.re + o.re, self.im + o.im, self.backend)

    __radd__ = __add__

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im, self.backend)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ComplexScalar(self.re - o.re, self.im - o.im, self.backend)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ComplexScalar(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.backend,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("complex division by zero")
        return ComplexScalar(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
            self.backend,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        result = ComplexScalar.of(1, self.backend)
        for _ in range(n):
            result = result * self
        return result

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def conj(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im, self.backend)

    def abs2(self) -> Real:
        """|x|^2 as a real number of the backend's type"""
        return self.re * self.re + self.im * self.im

    # predicates

    def is_zero(self, scale: float = 1.0) -> bool:
        if self.backend is Backend.EXACT:
            return self.re == 0 and self.im == 0
        return abs(self) <= approx_eps() * scale

    def is_real(self) -> bool:
        if self.backend is Backend.EXACT:
            return self.im == 0
        return abs(self.im) <= approx_eps()

    def close_to(self, other, scale: Optional[float] = None) -> bool:
        """Equality in the exact backend, eps-closeness (scale aware) otherwise"""
        o = self._coerce(other)
        if self.backend is Backend.EXACT:
            return self == o
        if scale is None:
            scale = 1.0 + max(abs(self), abs(o))
        return abs(self - o) <= approx_eps() * scale

    # conversions

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_approx(self) -> "ComplexScalar":
        return ComplexScalar(float(self.re), float(self.im), Backend.APPROX)

    def sort_key(self) -> tuple[float, float]:
        return (float(self.re), float(self.im))

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{format_real(self.re)}{sign}{format_real(abs(self.im))}i"


def scalar_zero(backend: Backend) -> ComplexScalar:
    return ComplexScalar.of(0, backend)


def scalar_one(backend: Backend) -> ComplexScalar:
    return ComplexScalar.of(1, backend)


def unit_i(backend: Backend) -> ComplexScalar:
    return ComplexScalar(0, 1, backend)


def as_parameter(t, backend: Backend) -> ComplexScalar:
    """Real evaluation parameter in the given backend (floats become exact binary fractions)."""
    if isinstance(t, ComplexScalar):
        return t if t.backend is backend else t.to_approx()
    if backend is Backend.EXACT:
        return ComplexScalar(Fraction(t), 0, backend)
    return ComplexScalar(float(t), 0.0, backend)


@dataclass(frozen=True, slots=True)
class PlanePoint:
    """Point of the plane stored as u = x + i y"""

    u: ComplexScalar

    @classmethod
    def from_xy(cls, x, y, backend: Backend = Backend.EXACT) -> "PlanePoint":
        if backend is Backend.EXACT:
            return cls(ComplexScalar(Fraction(x), Fraction(y), backend))
        return cls(ComplexScalar(float(x), float(y), backend))

    @classmethod
    def origin(cls, backend: Backend = Backend.EXACT) -> "PlanePoint":
        return cls(scalar_zero(backend))

    @property
    def x(self) -> Real:
        return self.u.re

    @property
    def y(self) -> Real:
        return self.u.im

    @property
    def backend(self) -> Backend:
        return self.u.backend

    def distance2(self, other: "PlanePoint") -> Real:
        return (self.u - other.u).abs2()

    def close_to(self, other: "PlanePoint") -> bool:
        return self.u.close_to(other.u)

    def to_floats(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def __str__(self) -> str:
        return f"({format_real(self.x)}, {format_real(self.y)})"


@dataclass(frozen=True, slots=True)
class KElement:
    """Element z + eta*w of K; a direct planar isometry when z != 0"""

    z: ComplexScalar
    w: ComplexScalar

    def __post_init__(self):
        if self.z.backend is not self.w.backend:
            raise BackendMismatch("primal and secondary part use different backends")

    @classmethod
    def of(cls, z: Number, w: Number = 0, backend: Backend = Backend.EXACT):
        return cls(ComplexScalar.of(z, backend), ComplexScalar.of(w, backend))

    @property
    def backend(self) -> Backend:
        return self.z.backend

    def __mul__(self, other: "KElement") -> "KElement":
        if not isinstance(other, KElement):
            return NotImplemented
        return k_mul(self, other)

    def __add__(self, other: "KElement") -> "KElement":
        return KElement(self.z + other.z, self.w + other.w)

    def __sub__(self, other: "KElement") -> "KElement":
        return KElement(self.z - other.z, self.w - other.w)

    def __neg__(self) -> "KElement":
        return KElement(-self.z, -self.w)

    def scale(self, r) -> "KElement":
        """Multiply by a real (central) scalar"""
        return KElement(self.z * r, self.w * r)

    def is_zero(self, scale: float = 1.0) -> bool:
        return self.z.is_zero(scale) and self.w.is_zero(scale)

    def is_isometry(self) -> bool:
        return not self.z.is_zero()

    def close_to(self, other: "KElement") -> bool:
        return self.z.close_to(other.z) and self.w.close_to(other.w)

    def to_approx(self) -> "KElement":
        return KElement(self.z.to_approx(), self.w.to_approx())

    def __str__(self) -> str:
        return f"{self.z}+({self.w})e"


def k_mul(a: KElement, b: KElement) -> KElement:
    """(z + eta w)(z' + eta w') = z z' + eta (conj(z) w' + z' w)"""
    return KElement(a.z * b.z, a.z.conj() * b.w + b.z * a.w)


def k_inv(k: KElement) -> KElement:
    """Inverse up to the real factor |z|^2: conj(z) - eta w"""
    if k.z.is_zero():
        raise ZeroPrimal(f"{k} has zero primal part")
    return KElement(k.z.conj(), -k.w)


def act_point(k: KElement, u: PlanePoint) -> PlanePoint:
    """Image of u under the isometry k: (u z^2 + z w) / |z|^2"""
    if k.z.is_zero():
        raise ZeroPrimal(f"{k} has zero primal part")
    z = k.z
    return PlanePoint((u.u * z * z + z * k.w) / z.abs2())


def midpt(k: KElement) -> PlanePoint:
    """Fixed point w / (conj(z) - z) of the rotations t - k"""
    if k.z.is_real():
        raise RealPrimal(f"{k} has real primal part")
    return PlanePoint(k.w / (k.z.conj() - k.z))


def _trim(coeffs: Sequence, magnitude, is_exact: bool) -> tuple:
    coeffs = tuple(coeffs)
    if not coeffs:
        return coeffs
    if is_exact:
        end = len(coeffs)
        while end and magnitude(coeffs[end - 1]) == 0:
            end -= 1
        return coeffs[:end]
    scale = max(magnitude(c) for c in coeffs)
    tol = approx_eps() * scale
    end = len(coeffs)
    while end and magnitude(coeffs[end - 1]) <= tol:
        end -= 1
    return coeffs[:end]


@dataclass(frozen=True)
class CPoly:
    """Polynomial in C[t], coefficients ascending by degree"""

    coeffs: tuple[ComplexScalar, ...]
    backend: Backend = Backend.EXACT

    def __post_init__(self):
        for c in self.coeffs:
            if c.backend is not self.backend:
                raise BackendMismatch("coefficient backend differs from polynomial")
        object.__setattr__(
            self,
            "coeffs",
            _trim(self.coeffs, abs, self.backend is Backend.EXACT),
        )

    # constructors

    @classmethod
    def of(cls, values: Iterable[Number], backend: Backend = Backend.EXACT) -> "CPoly":
        return cls(tuple(ComplexScalar.of(v, backend) for v in values), backend)

    @classmethod
    def zero(cls, backend: Backend = Backend.EXACT) -> "CPoly":
        return cls((), backend)

    @classmethod
    def one(cls, backend: Backend = Backend.EXACT) -> "CPoly":
        return cls((scalar_one(backend),), backend)

    @classmethod
    def constant(cls, c: ComplexScalar) -> "CPoly":
        return cls((c,), c.backend)

    @classmethod
    def linear(cls, root: ComplexScalar) -> "CPoly":
        """t - root"""
        return cls((-root, scalar_one(root.backend)), root.backend)

    @classmethod
    def from_roots(
        cls, roots: Iterable[tuple[ComplexScalar, int]], backend: Backend
    ) -> "CPoly":
        result = cls.one(backend)
        for value, mult in roots:
            result = result * cls.linear(value) ** mult
        return result

    # structure

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> ComplexScalar:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return scalar_zero(self.backend)

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> ComplexScalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.leading().close_to(1)

    def monic(self) -> "CPoly":
        lead = self.leading()
        return CPoly(tuple(c / lead for c in self.coeffs), self.backend)

    def conj(self) -> "CPoly":
        return CPoly(tuple(c.conj() for c in self.coeffs), self.backend)

    def real_part(self) -> "CPoly":
        return CPoly(
            tuple(ComplexScalar(c.re, 0, self.backend) for c in self.coeffs),
            self.backend,
        )

    def imag_part(self) -> "CPoly":
        return CPoly(
            tuple(ComplexScalar(c.im, 0, self.backend) for c in self.coeffs),
            self.backend,
        )

    def scale_norm(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    # arithmetic

    def _lift(self, other) -> Optional["CPoly"]:
        if isinstance(other, CPoly):
            if other.backend is not self.backend:
                raise BackendMismatch("polynomials use different backends")
            return other
        if isinstance(other, (ComplexScalar, int, Fraction, float, complex)):
            return CPoly.constant(ComplexScalar.of(other, self.backend))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self), len(o))
        return CPoly(tuple(self[i] + o[i] for i in range(n)), self.backend)

    __radd__ = __add__

    def __neg__(self):
        return CPoly(tuple(-c for c in self.coeffs), self.backend)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return CPoly.zero(self.backend)
        out = [scalar_zero(self.backend)] * (len(self) + len(o) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return CPoly(tuple(out), self.backend)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CPoly":
        result = CPoly.one(self.backend)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: "CPoly") -> tuple["CPoly", "CPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.leading()
        dq = other.degree
        quot = [scalar_zero(self.backend)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return CPoly(tuple(quot), self.backend), CPoly(tuple(rem[:dq]), self.backend)

    def __floordiv__(self, other: "CPoly") -> "CPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "CPoly") -> "CPoly":
        return divmod(self, other)[1]

    def eval(self, x) -> ComplexScalar:
        x = ComplexScalar.of(x, self.backend) if not isinstance(x, ComplexScalar) else x
        acc = scalar_zero(self.backend)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "CPoly":
        return CPoly(
            tuple(c * i for i, c in enumerate(self.coeffs) if i > 0), self.backend
        )

    def close_to(self, other: "CPoly", rel: Optional[float] = None) -> bool:
        """Exact equality, or coefficientwise closeness relative to the larger norm"""
        if self.backend is Backend.EXACT and other.backend is Backend.EXACT:
            return self == other
        tol = rel if rel is not None else approx_eps()
        scale = max(1.0, self.scale_norm(), other.scale_norm())
        n = max(len(self), len(other))
        return all(
            abs(self[i].to_complex() - other[i].to_complex()) <= tol * scale
            for i in range(n)
        )

    # conversions

    def to_numpy(self) -> np.ndarray:
        """Ascending complex coefficient array"""
        return np.array([c.to_complex() for c in self.coeffs], dtype=complex)

    @classmethod
    def from_numpy(cls, values: Iterable[complex]) -> "CPoly":
        return cls(
            tuple(ComplexScalar.from_complex(complex(v)) for v in values),
            Backend.APPROX,
        )

    def to_approx(self) -> "CPoly":
        return CPoly(tuple(c.to_approx() for c in self.coeffs), Backend.APPROX)

    def __str__(self) -> str:
        return format_cpoly(self)


def _coef_text(c: ComplexScalar) -> str:
    if c.im == 0:
        return format_real(c.re)
    if c.re == 0:
        return f"{format_real(c.im)}i"
    return f"({c})"


def format_cpoly(p: CPoly) -> str:
    """Grammar-compatible text such as 't^2+1' or '(1+2i) t-1/2i'"""
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c.is_zero() and p.backend is Backend.EXACT:
            continue
        text = _coef_text(c)
        power = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if not power:
            term = text
        elif text == "1":
            term = power
        elif text == "-1":
            term = f"-{power}"
        else:
            term = f"{text} {power}"
        terms.append(term)
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        out += term if term.startswith("-") else f"+{term}"
    return out


def _k_magnitude(k: KElement) -> float:
    return max(abs(k.z), abs(k.w))


@dataclass(frozen=True)
class MotionPolynomial:
    """Polynomial in K[t] with central indeterminate t, coefficients ascending"""

    coeffs: tuple[KElement, ...]
    backend: Backend = Backend.EXACT

    def __post_init__(self):
        for k in self.coeffs:
            if k.backend is not self.backend:
                raise BackendMismatch("coefficient backend differs from polynomial")
        if self.backend is Backend.EXACT:
            trimmed = _trim(
                self.coeffs, lambda k: 0 if k.is_zero() else 1, is_exact=True
            )
        else:
            trimmed = _trim(self.coeffs, _k_magnitude, is_exact=False)
        object.__setattr__(self, "coeffs", trimmed)

    @classmethod
    def from_parts(cls, Z: CPoly, W: Optional[CPoly] = None) -> "MotionPolynomial":
        W = W if W is not None else CPoly.zero(Z.backend)
        if Z.backend is not W.backend:
            raise BackendMismatch("primal and secondary part use different backends")
        n = max(len(Z), len(W))
        return cls(tuple(KElement(Z[i], W[i]) for i in range(n)), Z.backend)

    @classmethod
    def linear(cls, k: KElement) -> "MotionPolynomial":
        """t - k"""
        one = KElement(scalar_one(k.backend), scalar_zero(k.backend))
        return cls((-k, one), k.backend)

    @classmethod
    def one(cls, backend: Backend = Backend.EXACT) -> "MotionPolynomial":
        return cls((KElement(scalar_one(backend), scalar_zero(backend)),), backend)

    @classmethod
    def product(
        cls, factors: Sequence[KElement], backend: Backend
    ) -> "MotionPolynomial":
        """(t - k_1)(t - k_2)...(t - k_n)"""
        result = cls.one(backend)
        for k in factors:
            result = result * cls.linear(k)
        return result

    @cached_property
    def primal(self) -> CPoly:
        return CPoly(tuple(k.z for k in self.coeffs), self.backend)

    @cached_property
    def secondary(self) -> CPoly:
        return CPoly(tuple(k.w for k in self.coeffs), self.backend)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> KElement:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        if not self.coeffs:
            return False
        lead = self.leading()
        return lead.z.close_to(1) and lead.w.is_zero()

    def __mul__(self, other):
        if isinstance(other, CPoly):
            other = MotionPolynomial.from_parts(other)
        if not isinstance(other, MotionPolynomial):
            return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, CPoly):
            return poly_mul(MotionPolynomial.from_parts(other), self)
        return NotImplemented

    def __add__(self, other: "MotionPolynomial") -> "MotionPolynomial":
        return MotionPolynomial.from_parts(
            self.primal + other.primal, self.secondary + other.secondary
        )

    def inverse(self) -> "MotionPolynomial":
        """conj(Z) - eta W; multiplies with self to the real polynomial Z conj(Z)"""
        return MotionPolynomial(tuple(k_inv_unchecked(k) for k in self.coeffs), self.backend)

    def eval(self, t) -> KElement:
        return poly_eval(self, t)

    def close_to(self, other: "MotionPolynomial", rel: Optional[float] = None) -> bool:
        return self.primal.close_to(other.primal, rel) and self.secondary.close_to(
            other.secondary, rel
        )

    def to_approx(self) -> "MotionPolynomial":
        return MotionPolynomial(
            tuple(k.to_approx() for k in self.coeffs), Backend.APPROX
        )

    def __str__(self) -> str:
        return f"({format_cpoly(self.primal)})+({format_cpoly(self.secondary)})e"


def k_inv_unchecked(k: KElement) -> KElement:
    return KElement(k.z.conj(), -k.w)


def poly_mul(P: MotionPolynomial, Q: MotionPolynomial) -> MotionPolynomial:
    """Convolution product with k_mul on coefficients"""
    if P.backend is not Q.backend:
        raise BackendMismatch("motion polynomials use different backends")
    if not P.coeffs or not Q.coeffs:
        return MotionPolynomial((), P.backend)
    zero = KElement(scalar_zero(P.backend), scalar_zero(P.backend))
    out = [zero] * (len(P.coeffs) + len(Q.coeffs) - 1)
    for i, a in enumerate(P.coeffs):
        for j, b in enumerate(Q.coeffs):
            out[i + j] = out[i + j] + k_mul(a, b)
    return MotionPolynomial(tuple(out), P.backend)


def poly_eval(P: MotionPolynomial, t) -> KElement:
    """Horner evaluation at a real t; t = infinity yields the leading coefficient"""
    zero = KElement(scalar_zero(P.backend), scalar_zero(P.backend))
    if not P.coeffs:
        return zero
    if is_infinite(t):
        return P.leading()
    x = as_parameter(t, P.backend)
    acc = zero
    for c in reversed(P.coeffs):
        acc = acc.scale(x) + c
    return acc
