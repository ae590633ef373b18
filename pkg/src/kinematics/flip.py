"""
Flip procedure
Rearrangement (t - k1)(t - k2) = (t - k3)(t - k4) with swapped primal parts, the
flip mobility predicates and the selection of the auxiliary factor l that turns an
open chain into a ladder of antiparallelograms.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from utils.error_handling import DegenerateFlip, RealPrimal
from utils.logger import get_logger

from .algebra import Backend, ComplexScalar, KElement, MotionPolynomial, k_inv, midpt

logger = get_logger(__name__)

# Candidate imaginary parts for pp(l) = -q i, tried in order
PRIMAL_CANDIDATES: tuple[Fraction, ...] = tuple(
    Fraction(x)
    for x in ("9/5", "7/3", "11/4", "13/6", "17/7", "5/2", "3", "8/3", "2", "3/2")
)
# Real offsets a for the fallback family pp(l) = a - q i
REAL_OFFSETS: tuple[Fraction, ...] = tuple(Fraction(x) for x in ("1/2", "-1/2", "1", "-1"))
# Candidate sp(l) = c i
SECONDARY_CANDIDATES: tuple[Fraction, ...] = tuple(
    Fraction(x)
    for x in ("0", "1/2", "-1/2", "1/3", "-1/3", "1", "-1", "2/3", "-2/3", "3/2", "-3/2", "2", "-2")
)


@dataclass(frozen=True)
class FlipPair:
    """Result (k3, k4) of flip(k1, k2); pp(k3) = pp(k2) and pp(k4) = pp(k1)"""

    k3: KElement
    k4: KElement


@dataclass(frozen=True)
class LadderMeta:
    """Flip cascade data: (t - l_i)(t - k_i) = (t - ktilde_i)(t - l_{i+1})"""

    l: tuple[KElement, ...]
    ktilde: tuple[KElement, ...]

    @property
    def n(self) -> int:
        return len(self.ktilde)


def flip(k1: KElement, k2: KElement) -> FlipPair:
    """
    Unique (k3, k4) with (t - k1)(t - k2) = (t - k3)(t - k4), pp(k3) = pp(k2) and
    pp(k4) = pp(k1).

    Comparing coefficients gives w3 + w4 = w1 + w2 and
    z1 w3 + conj(z2) w4 = conj(z1) w2 + z2 w1.

    Raises:
        DegenerateFlip: pp(k1) = conj(pp(k2))
    """
    z1, w1, z2, w2 = k1.z, k1.w, k2.z, k2.w
    det = z2.conj() - z1
    if det.is_zero(scale=1.0 + abs(z1)):
        raise DegenerateFlip(f"primal parts {z1} and {z2} are conjugate")
    a = w1 + w2
    b = z1.conj() * w2 + z2 * w1
    w3 = (a * z2.conj() - b) / det
    w4 = (b - z1 * a) / det
    return FlipPair(KElement(z2, w3), KElement(z1, w4))


def _distinct_points(k1: KElement, k2: KElement) -> bool:
    p1, p2 = midpt(k1), midpt(k2)
    return not p1.close_to(p2)


def fm(k1: KElement, k2: KElement) -> bool:
    """Flip mobility: non-real, distinct, non-conjugate primal parts and distinct fixed points"""
    z1, z2 = k1.z, k2.z
    if z1.is_real() or z2.is_real():
        return False
    if z1.close_to(z2) or z1.close_to(z2.conj()):
        return False
    return _distinct_points(k1, k2)


def flip_cascade(l: KElement, ks: Sequence[KElement]) -> LadderMeta:
    """(ktilde_i, l_{i+1}) = flip(l_i, k_i) starting from l_1 = l"""
    ls = [l]
    ktilde = []
    for k in ks:
        pair = flip(ls[-1], k)
        ktilde.append(pair.k3)
        ls.append(pair.k4)
    return LadderMeta(tuple(ls), tuple(ktilde))


def ifm(l: KElement, ks: Sequence[KElement]) -> bool:
    """Iterated flip mobility: fm(l_i, k_i) at every step of the cascade"""
    current = l
    for k in ks:
        if not fm(current, k):
            return False
        current = flip(current, k).k4
    return True


def _scalar(re: Fraction, im: Fraction, backend: Backend) -> ComplexScalar:
    if backend is Backend.EXACT:
        return ComplexScalar(re, im, backend)
    return ComplexScalar(float(re), float(im), backend)


def _primal_candidates(backend: Backend) -> Iterator[ComplexScalar]:
    for q in PRIMAL_CANDIDATES:
        yield _scalar(Fraction(0), -q, backend)
    for a in REAL_OFFSETS:
        for q in PRIMAL_CANDIDATES:
            yield _scalar(a, -q, backend)


def _reverts_cleanly(l: KElement, ks: Sequence[KElement]) -> bool:
    """Every square of the cascade from l also satisfies the reverted flip identity"""
    ladder = flip_cascade(l, ks)
    return all(
        revert_flip_check(ladder.l[i], k, ladder.ktilde[i], ladder.l[i + 1])
        for i, k in enumerate(ks)
    )


def choose_l(ks: Sequence[KElement]) -> KElement:
    """
    First l in canonical enumeration order with ifm(l, ks).

    Primal parts -q i are tried before a - q i; secondary parts c i in a fixed order.
    Candidates whose primal part equals some pp(k_i) or its conjugate are skipped,
    as are secondary parts whose cascade fails the reverted flip identity.
    """
    if not ks:
        raise ValueError("choose_l needs at least one factor")
    for k in ks:
        if k.z.is_real():
            raise RealPrimal(f"factor {k} has a real primal part")
    backend = ks[0].backend
    forbidden = [k.z for k in ks] + [k.z.conj() for k in ks]
    tried = 0
    for z in _primal_candidates(backend):
        if any(z.close_to(f) for f in forbidden):
            continue
        for c in SECONDARY_CANDIDATES:
            l = KElement(z, _scalar(Fraction(0), c, backend))
            tried += 1
            if not ifm(l, ks):
                continue
            if not _reverts_cleanly(l, ks):
                logger.debug(f"l = {l} passes ifm but not the reverted flips")
                continue
            logger.debug(f"chose l = {l} after {tried} candidates")
            return l
    raise DegenerateFlip(f"no admissible l among {tried} candidates")


def revert_flip_check(k1: KElement, k2: KElement, k3: KElement, k4: KElement) -> bool:
    """
    Check that (inv(k3), k1) is the flip of (k4, inv(k2)): primal parts match and
    (t - k4)(t - inv k2) = (t - inv k3)(t - k1).
    """
    ik2, ik3 = k_inv(k2), k_inv(k3)
    if not (ik3.z.close_to(ik2.z) and k1.z.close_to(k4.z)):
        return False
    left = MotionPolynomial.linear(k4) * MotionPolynomial.linear(ik2)
    right = MotionPolynomial.linear(ik3) * MotionPolynomial.linear(k1)
    return left.close_to(right)
