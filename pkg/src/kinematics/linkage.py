"""
Linkages
Link graph data model, the open chain and ladder synthesis algorithms, the flip
four-bar, pose evaluation, rational joint trajectories and mobility/count reports.

Joint convention: a joint (a, b) with factor k satisfies A_a = (t - k) * A_b, where
A_x is the position of link x relative to the frame link. The factor product
(t - k_1)...(t - k_n) is the position of link 1 relative to link n + 1, so the frame
link is held fixed and the pen sits at the origin of the drawing link.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

import networkx as nx
import numpy as np

from config.config import get_config
from utils.error_handling import IFMViolation, LinkageError
from utils.logger import get_logger

from .algebra import (
    Backend,
    ComplexScalar,
    CPoly,
    KElement,
    MotionPolynomial,
    PlanePoint,
    act_point,
    as_parameter,
    is_infinite,
    k_inv,
    k_mul,
    midpt,
    scalar_one,
    scalar_zero,
)
from .factor import factor_motion_polynomial, strip_real_content
from .flip import LadderMeta, choose_l, flip, flip_cascade, ifm
from .roots import c_gcd

logger = get_logger(__name__)

Parameter = Union[Fraction, float, int, None]


class LinkageKind(str, Enum):
    OPEN_CHAIN = "open_chain"
    LADDER = "ladder"
    FOUR_BAR = "four_bar"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Joint:
    """Revolute joint between links a and b about a fixed center"""

    a: int
    b: int
    center: PlanePoint
    factor: Optional[KElement] = None
    label: str = ""

    @property
    def links(self) -> tuple[int, int]:
        return (self.a, self.b)

    def other(self, link: int) -> int:
        if link == self.a:
            return self.b
        if link == self.b:
            return self.a
        raise LinkageError(f"link {link} is not incident to joint {self.links}")


@dataclass(frozen=True)
class SynthesisMeta:
    """How a linkage was obtained from a motion polynomial"""

    factors: tuple[KElement, ...]
    frame_link: int
    drawing_link: int
    ladder: Optional[LadderMeta] = None
    motion: Optional[MotionPolynomial] = None
    R: Optional[CPoly] = None
    S: Optional[CPoly] = None
    C: Optional[CPoly] = None


@dataclass(frozen=True)
class Linkage:
    """Connected link graph (links 1..n_links) with joint centers"""

    n_links: int
    joints: tuple[Joint, ...]
    kind: LinkageKind = LinkageKind.CUSTOM
    meta: Optional[SynthesisMeta] = None

    def __post_init__(self):
        seen = set()
        for joint in self.joints:
            if joint.a == joint.b:
                raise LinkageError(f"self-loop at link {joint.a}")
            for link in joint.links:
                if not 1 <= link <= self.n_links:
                    raise LinkageError(f"joint {joint.links} references unknown link {link}")
            key = frozenset(joint.links)
            if key in seen:
                raise LinkageError(f"duplicate joint between links {joint.links}")
            seen.add(key)
        if self.n_links > 0 and not nx.is_connected(self.graph):
            raise LinkageError("link graph is not connected")

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n_links + 1))
        for idx, joint in enumerate(self.joints):
            graph.add_edge(joint.a, joint.b, index=idx)
        return graph

    @property
    def backend(self) -> Backend:
        return self.joints[0].center.backend if self.joints else Backend.EXACT

    @property
    def frame_link(self) -> int:
        return self.meta.frame_link if self.meta else 1

    @property
    def drawing_link(self) -> int:
        return self.meta.drawing_link if self.meta else self.n_links

    @property
    def links(self) -> range:
        return range(1, self.n_links + 1)

    def joint_index(self, a: int, b: int) -> int:
        try:
            return self.graph.edges[a, b]["index"]
        except KeyError:
            raise LinkageError(f"no joint between links {a} and {b}") from None

    def joints_of(self, link: int) -> list[int]:
        return sorted(self.graph.edges[link, other]["index"] for other in self.graph[link])

    def segments(self, link: int) -> tuple[tuple[int, int], ...]:
        """
        Joint index pairs whose centers bound the segments of a link: one segment
        for two joints, a star from the highest-index joint for three or more.
        """
        incident = self.joints_of(link)
        if len(incident) < 2:
            return ()
        hub = incident[-1]
        return tuple((other, hub) for other in incident[:-1])

    def require_factors(self) -> None:
        missing = [j.links for j in self.joints if j.factor is None]
        if missing:
            raise LinkageError(f"joints without factors: {missing}")


@dataclass(frozen=True)
class Pose:
    """Absolute link isometries and joint positions at one parameter value"""

    t: Parameter
    absolute: dict[int, KElement] = field(hash=False)
    joint_positions: tuple[PlanePoint, ...]
    pen: PlanePoint

    def link_position(self, link: int, local: PlanePoint) -> PlanePoint:
        return act_point(self.absolute[link], local)


@dataclass(frozen=True)
class Trajectory:
    """Rational plane curve (x_num / x_den, y_num / y_den) with real polynomials"""

    x_num: CPoly
    x_den: CPoly
    y_num: CPoly
    y_den: CPoly

    @property
    def degree(self) -> int:
        return max(p.degree for p in (self.x_num, self.x_den, self.y_num, self.y_den))

    def at(self, t: Parameter) -> PlanePoint:
        backend = self.x_den.backend
        if is_infinite(t):
            x, y = _limit(self.x_num, self.x_den), _limit(self.y_num, self.y_den)
            return PlanePoint(ComplexScalar(x, y, backend))
        s = as_parameter(t, backend)
        x = self.x_num.eval(s) / self.x_den.eval(s)
        y = self.y_num.eval(s) / self.y_den.eval(s)
        return PlanePoint(ComplexScalar(x.re, y.re, backend))


def _limit(num: CPoly, den: CPoly):
    if num.is_zero() or num.degree < den.degree:
        return scalar_zero(den.backend).re
    return (num.leading() / den.leading()).re


@dataclass(frozen=True)
class MobilityReport:
    """Sampled local dimension of the configuration space"""

    dimension: int
    estimates: tuple[int, ...]
    joints: int
    cycles: int


@dataclass(frozen=True)
class CountReport:
    links: int
    joints: int
    factors: int
    expected_links: int
    expected_joints: int
    degree: Optional[int] = None
    bound_links: Optional[int] = None
    bound_joints: Optional[int] = None
    constant_speed: tuple[int, ...] = ()

    @property
    def matches_formula(self) -> bool:
        return self.links == self.expected_links and self.joints == self.expected_joints

    @property
    def within_bounds(self) -> bool:
        if self.bound_links is None or self.bound_joints is None:
            return True
        return self.links <= self.bound_links and self.joints <= self.bound_joints


# Construction


def _joint(a: int, b: int, k: KElement, label: str) -> Joint:
    return Joint(a, b, midpt(k), k, label)


def chain_linkage(
    factors: Sequence[KElement], meta: Optional[SynthesisMeta] = None
) -> Linkage:
    """Open chain of n + 1 links; joint (i, i + 1) carries factor k_i"""
    factors = tuple(factors)
    if not factors:
        raise LinkageError("an open chain needs at least one factor")
    n = len(factors)
    joints = tuple(_joint(i, i + 1, k, f"u{i}") for i, k in enumerate(factors, start=1))
    meta = meta or SynthesisMeta(factors, frame_link=n + 1, drawing_link=1)
    return Linkage(n + 1, joints, LinkageKind.OPEN_CHAIN, meta)


def _ladder_joints(factors: Sequence[KElement], ladder: LadderMeta) -> tuple[Joint, ...]:
    n = len(factors)
    top = [_joint(h, h + 1, k, f"u{h}") for h, k in enumerate(factors, start=1)]
    bottom = [
        _joint(n + 1 + h, n + 2 + h, kt, f"ut{h}")
        for h, kt in enumerate(ladder.ktilde, start=1)
    ]
    rungs = [_joint(n + 1 + j, j, l, f"v{j}") for j, l in enumerate(ladder.l, start=1)]
    return tuple(top + bottom + rungs)


def ladder_linkage(
    factors: Sequence[KElement],
    l: KElement,
    meta: Optional[SynthesisMeta] = None,
) -> Linkage:
    """
    Ladder of n antiparallelograms: top chain 1..n+1, bottom chain n+2..2n+2 and
    rungs (n+1+j, j) carrying l_j from the flip cascade started at l.

    Raises:
        IFMViolation: l does not satisfy iterated flip mobility for the factors
    """
    factors = tuple(factors)
    if not factors:
        raise LinkageError("a ladder needs at least one factor")
    if not ifm(l, factors):
        raise IFMViolation(f"l = {l} violates iterated flip mobility")
    ladder = flip_cascade(l, factors)
    n = len(factors)
    if meta is None:
        meta = SynthesisMeta(factors, frame_link=n + 1, drawing_link=1, ladder=ladder)
    else:
        meta = replace(meta, ladder=ladder)
    return Linkage(2 * n + 2, _ladder_joints(factors, ladder), LinkageKind.LADDER, meta)


def _factored(P: MotionPolynomial):
    S, reduced = strip_real_content(P)
    result = factor_motion_polynomial(reduced)
    return S, result


def construct_weak(P: MotionPolynomial, *, C: Optional[CPoly] = None) -> Linkage:
    """Open chain weakly realizing P: strip S, factor P / S, joints at midpt(k_i)"""
    S, result = _factored(P)
    meta = SynthesisMeta(
        result.factors,
        frame_link=len(result.factors) + 1,
        drawing_link=1,
        motion=P,
        R=result.R,
        S=S,
        C=C,
    )
    linkage = chain_linkage(result.factors, meta)
    logger.info(f"open chain with {linkage.n_links} links and {len(linkage.joints)} joints")
    return linkage


def construct_strong(
    P: MotionPolynomial,
    l: Optional[KElement] = None,
    *,
    C: Optional[CPoly] = None,
) -> Linkage:
    """
    Ladder strongly realizing P. Without l the first admissible l of the canonical
    enumeration is used.

    Raises:
        IFMViolation: a user supplied l violates iterated flip mobility
    """
    S, result = _factored(P)
    factors = result.factors
    if l is None:
        l = choose_l(factors)
    elif l.backend is Backend.APPROX and result.backend is Backend.EXACT:
        factors = tuple(k.to_approx() for k in factors)
    elif l.backend is not result.backend:
        l = l.to_approx()
    logger.debug(f"ladder auxiliary factor l = {l}")
    meta = SynthesisMeta(
        factors,
        frame_link=len(factors) + 1,
        drawing_link=1,
        motion=P,
        R=result.R,
        S=S,
        C=C,
    )
    linkage = ladder_linkage(factors, l, meta)
    logger.info(f"ladder with {linkage.n_links} links and {len(linkage.joints)} joints")
    return linkage


def flip_linkage(k1: KElement, k2: KElement) -> Linkage:
    """
    Antiparallelogram four-bar of the flip (k3, k4) = flip(k1, k2): joints (3, 1)
    with k1, (1, 2) with k2, (3, 4) with k3 and (4, 2) with k4. Link 2 is the frame,
    link 3 carries (t - k1)(t - k2).
    """
    pair = flip(k1, k2)
    ladder = LadderMeta((k1, pair.k4), (pair.k3,))
    joints = (
        _joint(1, 2, k2, "u2"),
        _joint(3, 4, pair.k3, "u3"),
        _joint(3, 1, k1, "u1"),
        _joint(4, 2, pair.k4, "u4"),
    )
    meta = SynthesisMeta((k1, k2), frame_link=2, drawing_link=3, ladder=ladder)
    return Linkage(4, joints, LinkageKind.FOUR_BAR, meta)


# Evaluation


def _step(joint: Joint, from_link: int) -> MotionPolynomial:
    sigma = MotionPolynomial.linear(joint.factor)
    return sigma if joint.a == from_link else sigma.inverse()


def relative_motion(L: Linkage, a: int, b: int) -> MotionPolynomial:
    """M with A_a = M * A_b along a shortest path of the link graph (up to a real factor)"""
    L.require_factors()
    path = nx.shortest_path(L.graph, a, b)
    M = MotionPolynomial.one(L.backend)
    for x, y in zip(path, path[1:]):
        M = M * _step(L.joints[L.joint_index(x, y)], x)
    return M


def _sigma(joint: Joint, t: Parameter) -> KElement:
    return MotionPolynomial.linear(joint.factor).eval(t)


def pose_at(L: Linkage, t: Parameter) -> Pose:
    """
    Absolute isometries with the frame link fixed. Links are reached through joints
    whose b-side is already placed; inverses are used only when nothing else is left.
    """
    L.require_factors()
    backend = L.backend
    identity = KElement(scalar_one(backend), scalar_zero(backend))
    absolute = {L.frame_link: identity}
    pending = set(range(len(L.joints)))
    while pending:
        progress = False
        for idx in sorted(pending):
            joint = L.joints[idx]
            if joint.b in absolute and joint.a not in absolute:
                absolute[joint.a] = k_mul(_sigma(joint, t), absolute[joint.b])
                progress = True
        pending = {i for i in pending if not all(x in absolute for x in L.joints[i].links)}
        if progress or not pending:
            continue
        for idx in sorted(pending):
            joint = L.joints[idx]
            if joint.a in absolute and joint.b not in absolute:
                absolute[joint.b] = k_mul(k_inv(_sigma(joint, t)), absolute[joint.a])
                progress = True
                break
        if not progress:
            raise LinkageError("pose propagation stalled")
        pending = {i for i in pending if not all(x in absolute for x in L.joints[i].links)}

    positions = tuple(act_point(absolute[j.b], j.center) for j in L.joints)
    pen = act_point(absolute[L.drawing_link], PlanePoint.origin(backend))
    return Pose(t, absolute, positions, pen)


def cycle_residual(L: Linkage, pose: Pose) -> float:
    """Largest distance between the images of a joint center under its two links"""
    worst = 0.0
    for joint in L.joints:
        pa = act_point(pose.absolute[joint.a], joint.center)
        pb = act_point(pose.absolute[joint.b], joint.center)
        worst = max(worst, abs(pa.u - pb.u))
    return worst


def point_trajectory(M: MotionPolynomial, point: PlanePoint) -> Trajectory:
    """Orbit of a point under M as (Re N / D, Im N / D), N = c Z^2 + Z W, D = Z conj(Z)"""
    Z, W = M.primal, M.secondary
    c = CPoly.constant(point.u)
    N = c * Z * Z + Z * W
    D = (Z * Z.conj()).real_part()
    x_num, y_num = N.real_part(), N.imag_part()
    if M.backend is Backend.EXACT:
        g = c_gcd([x_num, y_num, D])
        if g.degree > 0:
            x_num, y_num, D = x_num // g, y_num // g, D // g
    return Trajectory(x_num, D, y_num, D)


def joint_trajectory(L: Linkage, joint_index: int) -> Trajectory:
    joint = L.joints[joint_index]
    return point_trajectory(relative_motion(L, joint.b, L.frame_link), joint.center)


def pen_trajectory(L: Linkage) -> Trajectory:
    M = relative_motion(L, L.drawing_link, L.frame_link)
    return point_trajectory(M, PlanePoint.origin(L.backend))


# Reports


def _rotation_about(center: complex, theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    x, y = center.real, center.imag
    return np.array(
        [
            [c, -s, x - c * x + s * y],
            [s, c, y - s * x - c * y],
            [0.0, 0.0, 1.0],
        ]
    )


def _cycle_steps(L: Linkage) -> list[list[tuple[int, int]]]:
    """Per independent cycle: (joint index, +1 or -1) in traversal order"""
    cycles = []
    for nodes in nx.cycle_basis(L.graph):
        steps = []
        for x, y in zip(nodes, nodes[1:] + nodes[:1]):
            idx = L.joint_index(x, y)
            steps.append((idx, 1 if L.joints[idx].a == x else -1))
        cycles.append(steps)
    return cycles


def _constraints(L: Linkage, cycles, thetas: np.ndarray) -> np.ndarray:
    values = []
    for steps in cycles:
        total = np.eye(3)
        for idx, sign in steps:
            center = complex(*L.joints[idx].center.to_floats())
            total = _rotation_about(center, sign * thetas[idx]) @ total
        diff = total - np.eye(3)
        values.extend([diff[0, 0], diff[1, 0], diff[0, 2], diff[1, 2]])
    return np.array(values)


def _angles(L: Linkage, t: float) -> np.ndarray:
    return np.array(
        [2.0 * np.angle(t - j.factor.z.to_complex()) for j in L.joints], dtype=float
    )


def mobility_sample_check(L: Linkage, trials: Optional[int] = None) -> MobilityReport:
    """
    Local dimension of the configuration space at sampled poses: number of joint
    angles minus the rank of the Jacobian of the cycle closure conditions.
    """
    L.require_factors()
    config = get_config()
    trials = trials if trials is not None else config.synthesis.mobility_trials
    cycles = _cycle_steps(L)
    n = len(L.joints)
    if not cycles:
        return MobilityReport(n, tuple([n] * max(trials, 1)), n, 0)

    rng = np.random.default_rng(config.synthesis.search_seed)
    h = 1e-6
    estimates = []
    for _ in range(max(trials, 1)):
        t = float(rng.normal(scale=2.0))
        base = _angles(L, t)
        columns = []
        for idx in range(n):
            step = np.zeros(n)
            step[idx] = h
            forward = _constraints(L, cycles, base + step)
            backward = _constraints(L, cycles, base - step)
            columns.append((forward - backward) / (2 * h))
        J = np.column_stack(columns)
        scale = max(1.0, float(np.linalg.norm(J, 2)))
        rank = int(np.linalg.matrix_rank(J, tol=1e-6 * scale))
        estimates.append(n - rank)
    dimension = max(set(estimates), key=estimates.count)
    logger.debug(f"mobility estimates {estimates}")
    return MobilityReport(dimension, tuple(estimates), n, len(cycles))


def _is_unit_rotation(k: KElement) -> bool:
    return k.z.close_to(ComplexScalar(0, 1, k.backend)) or k.z.close_to(
        ComplexScalar(0, -1, k.backend)
    )


def count_report(L: Linkage) -> CountReport:
    """Link and joint counts against the synthesis formulas and degree bounds"""
    meta = L.meta
    factors = meta.factors if meta else ()
    n = len(factors)
    constant_speed = tuple(i for i, k in enumerate(factors, start=1) if _is_unit_rotation(k))
    if L.kind is LinkageKind.OPEN_CHAIN:
        expected = (n + 1, n)
    elif L.kind in (LinkageKind.LADDER, LinkageKind.FOUR_BAR):
        n = meta.ladder.n if meta and meta.ladder else n
        expected = (2 * n + 2, 3 * n + 1)
    else:
        expected = (L.n_links, len(L.joints))

    degree = bound_links = bound_joints = None
    if meta and meta.motion is not None and L.kind is LinkageKind.LADDER:
        if meta.C is not None:
            degree = meta.motion.degree - meta.C.degree
            bound_links, bound_joints = 3 * degree + 2, (9 * degree) // 2 + 1
        else:
            degree = meta.motion.degree
            bound_links, bound_joints = 4 * degree + 2, 6 * degree + 1
    return CountReport(
        links=L.n_links,
        joints=len(L.joints),
        factors=n,
        expected_links=expected[0],
        expected_joints=expected[1],
        degree=degree,
        bound_links=bound_links,
        bound_joints=bound_joints,
        constant_speed=constant_speed,
    )
