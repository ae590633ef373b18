"""
Self-collision detection
A joint (i, j) collides with a link k lying between i and j in a layer ordering
when the joint's pin passes over one of k's segments. In the frame of link k the
segment is fixed and the pin follows a rational curve, so events are real roots of
one collinearity polynomial filtered by the segment parameter s in [0, 1], plus the
initial position t = infinity.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from config.config import get_config
from utils.error_handling import LinkageError, NotLadder
from utils.logger import get_logger

from .algebra import INFINITY, Backend, ComplexScalar, CPoly, MotionPolynomial, is_infinite
from .layers import assign_layers
from .linkage import Linkage, LinkageKind, pose_at, relative_motion
from .roots import c_gcd
from .symbolic import real_roots_exact

logger = get_logger(__name__)

Real = Union[Fraction, float]


@dataclass(frozen=True)
class CollisionEvent:
    """Joint `joint` lies on segment `segment` of link `link` at time t, parameter s"""

    joint: int
    links: tuple[int, int]
    link: int
    t: Real
    s: Real
    segment: tuple[int, int]
    exact: bool = True

    @property
    def at_infinity(self) -> bool:
        return is_infinite(self.t)


@dataclass(frozen=True)
class OrderingResult:
    ordering: tuple[int, ...]
    finite: int
    infinite: int
    events: tuple[CollisionEvent, ...]

    @property
    def count(self) -> int:
        return self.finite + self.infinite


def default_ordering(L: Linkage) -> tuple[int, ...]:
    """
    Ladders stack their links bottom to top as in the layer assignment; every
    other linkage uses ascending link ids.
    """
    if L.kind is not LinkageKind.LADDER:
        return tuple(L.links)
    try:
        layers = assign_layers(L)
    except NotLadder:
        return tuple(L.links)
    return tuple(sorted(L.links, key=lambda link: (layers.links[link].low, link)))


def _check_ordering(L: Linkage, ordering: Sequence[int]) -> dict[int, int]:
    if sorted(ordering) != list(L.links):
        raise LinkageError(f"ordering {list(ordering)} is not a permutation of the links")
    return {link: pos for pos, link in enumerate(ordering)}


def _approx_real_roots(F: CPoly) -> list[float]:
    config = get_config().numerics
    coeffs = np.array([float(c.re) for c in F.coeffs])
    raw = np.roots(coeffs[::-1])
    roots: list[float] = []
    deriv = np.polynomial.polynomial.polyder(coeffs)
    for r in raw:
        if abs(r.imag) > config.realness_tol * (1.0 + abs(r)):
            continue
        x = float(r.real)
        slope = np.polynomial.polynomial.polyval(x, deriv)
        if slope != 0:
            candidate = x - np.polynomial.polynomial.polyval(x, coeffs) / slope
            if abs(np.polynomial.polynomial.polyval(candidate, coeffs)) <= abs(
                np.polynomial.polynomial.polyval(x, coeffs)
            ):
                x = float(candidate)
        if not any(abs(x - y) <= config.eps * (1.0 + abs(x)) for y in roots):
            roots.append(x)
    return sorted(roots)


class CollisionAnalyzer:
    """
    Per (joint, link) collision events, cached; events do not depend on the layer
    ordering, so orderings are compared by filtering the cache.
    """

    def __init__(self, L: Linkage):
        L.require_factors()
        self.linkage = L
        self._events: dict[tuple[int, int], tuple[CollisionEvent, ...]] = {}
        self._motions: dict[tuple[int, int], MotionPolynomial] = {}

    def _motion(self, a: int, k: int) -> MotionPolynomial:
        key = (a, k)
        if key not in self._motions:
            self._motions[key] = relative_motion(self.linkage, a, k)
        return self._motions[key]

    def pair_events(self, joint_index: int, link: int) -> tuple[CollisionEvent, ...]:
        key = (joint_index, link)
        if key not in self._events:
            self._events[key] = self._compute(joint_index, link)
        return self._events[key]

    def _compute(self, joint_index: int, link: int) -> tuple[CollisionEvent, ...]:
        L = self.linkage
        joint = L.joints[joint_index]
        if link in joint.links:
            return ()
        M = self._motion(joint.a, link)
        Z, W = M.primal, M.secondary
        c = CPoly.constant(joint.center.u)
        # pin in the frame of `link`: N / D
        N = c * Z * Z + Z * W
        D = (Z * Z.conj()).real_part()

        found: dict[object, CollisionEvent] = {}
        for p, q in L.segments(link):
            c2, c3 = L.joints[p].center.u, L.joints[q].center.u
            for event in self._segment_events(joint_index, link, (p, q), N, D, c2, c3):
                found.setdefault(event.t, event)
        return tuple(sorted(found.values(), key=lambda e: _t_key(e.t)))

    def _segment_events(self, joint_index, link, segment, N, D, c2, c3):
        L = self.linkage
        joint = L.joints[joint_index]
        d = c2 - c3
        rel = N - CPoly.constant(c3) * D
        exact = L.backend is Backend.EXACT

        def event(t, s, is_exact=exact):
            return CollisionEvent(joint_index, joint.links, link, t, s, segment, is_exact)

        # t = infinity: the pin sits at its center
        at_inf = joint.center.u - c3
        if d.is_zero():
            if at_inf.is_zero():
                yield event(INFINITY, _zero(exact))
        else:
            cross = (at_inf.conj() * d).im
            if _is_zero_real(cross, exact):
                s = (d.conj() * at_inf).re / d.abs2()
                if _in_unit(s, exact):
                    yield event(INFINITY, s)

        if d.is_zero():
            # collapsed segment: pin meets the point where Re and Im of rel vanish
            parts = [p for p in (rel.real_part(), rel.imag_part()) if not p.is_zero()]
            if not parts:
                logger.warning(f"joint {joint.links} rests on collapsed segment {segment}")
                return
            F = c_gcd(parts).real_part()
            if F.degree < 1:
                return
            for t, is_exact in self._real_roots(F):
                yield event(t, _zero(exact and is_exact), exact and is_exact)
            return

        F = (rel.conj() * CPoly.constant(d)).imag_part()
        if F.is_zero():
            logger.warning(
                f"joint {joint.links} stays on the line of link {link} segment {segment}"
            )
            S = (rel * CPoly.constant(d.conj())).real_part()
            boundary = [S, S - D * CPoly.constant(d.abs2())]
            candidates = [r for B in boundary if not B.is_zero() for r in self._real_roots(B)]
        else:
            candidates = self._real_roots(F)
        for t, is_exact in candidates:
            s = _s_value(rel, D, d, t, exact and is_exact)
            if _in_unit(s, exact and is_exact):
                yield event(t, s, exact and is_exact)

    def _real_roots(self, F: CPoly) -> list[tuple[Real, bool]]:
        if F.backend is Backend.EXACT:
            return [(r, isinstance(r, Fraction)) for r in real_roots_exact(F)]
        return [(r, False) for r in _approx_real_roots(F)]

    def events(self, ordering: Sequence[int]) -> list[CollisionEvent]:
        position = _check_ordering(self.linkage, ordering)
        out = []
        for idx, joint in enumerate(self.linkage.joints):
            lo, hi = sorted((position[joint.a], position[joint.b]))
            for pos in range(lo + 1, hi):
                out.extend(self.pair_events(idx, ordering[pos]))
        out.sort(key=lambda e: (e.joint, e.link, _t_key(e.t)))
        return out

    def score(self, ordering: Sequence[int]) -> tuple[int, int]:
        """(finite events, events at infinity) for lexicographic comparison"""
        events = self.events(ordering)
        infinite = sum(1 for e in events if e.at_infinity)
        return (len(events) - infinite, infinite)


def _t_key(t: Real) -> float:
    return math.inf if is_infinite(t) else float(t)


def _zero(exact: bool) -> Real:
    return Fraction(0) if exact else 0.0


def _is_zero_real(x: Real, exact: bool) -> bool:
    if exact:
        return x == 0
    return abs(x) <= get_config().numerics.eps


def _in_unit(s: Real, exact: bool) -> bool:
    if exact:
        return 0 <= s <= 1
    tol = get_config().numerics.eps ** 0.5
    return -tol <= float(s) <= 1 + tol


def _s_value(rel: CPoly, D: CPoly, d: ComplexScalar, t: Real, exact: bool) -> Real:
    if exact:
        x = ComplexScalar(Fraction(t), 0)
        return (d.conj() * rel.eval(x)).re / (d.abs2() * D.eval(x).re)
    x = complex(float(t))
    value = np.polyval(rel.to_numpy()[::-1], x)
    den = float(np.polyval(D.to_numpy()[::-1], x).real)
    return float((d.to_complex().conjugate() * value).real / (abs(d.to_complex()) ** 2 * den))


def detect_collisions(
    L: Linkage,
    ordering: Optional[Sequence[int]] = None,
    analyzer: Optional[CollisionAnalyzer] = None,
) -> list[CollisionEvent]:
    """All (joint, link) events for links strictly between the joint's links in the ordering"""
    ordering = tuple(ordering) if ordering is not None else default_ordering(L)
    analyzer = analyzer or CollisionAnalyzer(L)
    events = analyzer.events(ordering)
    logger.info(f"{len(events)} collision events for ordering {list(ordering)}")
    return events


def search_ordering(
    L: Linkage,
    budget: Optional[int] = None,
    seed: Optional[int] = None,
    analyzer: Optional[CollisionAnalyzer] = None,
) -> OrderingResult:
    """
    Random restarts followed by pairwise-swap descent, minimizing finite-t events
    first and events at infinity second. `budget` bounds the number of orderings
    scored.
    """
    config = get_config().synthesis
    budget = budget if budget is not None else config.search_budget
    rng = random.Random(config.search_seed if seed is None else seed)
    analyzer = analyzer or CollisionAnalyzer(L)

    best = default_ordering(L)
    best_score = analyzer.score(best)
    spent = 1
    n = L.n_links
    while spent < budget and best_score != (0, 0) and n > 2:
        current = list(L.links)
        rng.shuffle(current)
        score = analyzer.score(current)
        spent += 1
        improved = True
        while improved and spent < budget:
            improved = False
            for i in range(n):
                for j in range(i + 1, n):
                    if spent >= budget:
                        break
                    current[i], current[j] = current[j], current[i]
                    candidate = analyzer.score(current)
                    spent += 1
                    if candidate < score:
                        score = candidate
                        improved = True
                    else:
                        current[i], current[j] = current[j], current[i]
        if score < best_score:
            best, best_score = tuple(current), score
            logger.debug(f"ordering {list(best)} scores {best_score}")

    events = tuple(analyzer.events(best))
    return OrderingResult(best, best_score[0], best_score[1], events)


def event_residual(L: Linkage, event: CollisionEvent) -> float:
    """Distance between the pin and s * x2 + (1 - s) * x3 in world coordinates"""
    pose = pose_at(L, INFINITY if event.at_infinity else event.t)
    x1 = pose.joint_positions[event.joint].u.to_complex()
    p, q = event.segment
    x2 = pose.link_position(event.link, L.joints[p].center).u.to_complex()
    x3 = pose.link_position(event.link, L.joints[q].center).u.to_complex()
    s = float(event.s)
    return abs(x1 - (s * x2 + (1 - s) * x3))
