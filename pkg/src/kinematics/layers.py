"""
Layer design for ladders
Every link is an F-link (one layer), a U-link (rods on layers a < b joined by a
vertical piece) or a Z-link (layers a and a + 2). T-joints join links on
neighbouring layers, Z-joints join a Z-link on (a, a + 2) with the link on layer
a + 1. A ladder with n squares fits on 4n + 1 layers without self-collisions.
"""

from dataclasses import dataclass
from enum import Enum

from utils.error_handling import NotLadder
from utils.logger import get_logger

from .linkage import Linkage, LinkageKind

logger = get_logger(__name__)


class LinkType(str, Enum):
    F = "F"
    U = "U"
    Z = "Z"


class JointType(str, Enum):
    T = "T"
    Z = "Z"


@dataclass(frozen=True)
class LinkLayer:
    kind: LinkType
    layers: tuple[int, ...]

    @property
    def low(self) -> int:
        return self.layers[0]

    @property
    def high(self) -> int:
        return self.layers[-1]


@dataclass(frozen=True)
class LayerAssignment:
    """Layer per link id and type per joint index"""

    links: dict[int, LinkLayer]
    joints: tuple[JointType, ...]
    n_layers: int

    def brightness(self, link: int) -> float:
        """0 for the lowest layer, 1 for the highest"""
        if self.n_layers <= 1:
            return 1.0
        return self.links[link].low / (self.n_layers - 1)


def _squares(L: Linkage) -> int:
    if L.kind not in (LinkageKind.LADDER, LinkageKind.FOUR_BAR) or L.n_links % 2:
        raise NotLadder(f"{L.kind.value} linkage has no ladder layout")
    n = (L.n_links - 2) // 2
    if len(L.joints) != 3 * n + 1 or n < 1:
        raise NotLadder(f"{L.n_links} links and {len(L.joints)} joints do not form a ladder")
    return n


def assign_layers(L: Linkage) -> LayerAssignment:
    """
    Nested U-links (0, 4n), (3, 4n - 1), (6, 4n - 2), ... on the top chain, the last
    top link F(3n); bottom chain F(1), Z(2, 4), Z(5, 7), ..., F(3n - 1). Rungs
    2..n are Z-joints, all other joints T-joints.

    Raises:
        NotLadder: L is not a ladder
    """
    n = _squares(L)
    links: dict[int, LinkLayer] = {}
    for h in range(1, n + 1):
        links[h] = LinkLayer(LinkType.U, (3 * (h - 1), 4 * n - (h - 1)))
    links[n + 1] = LinkLayer(LinkType.F, (3 * n,))
    links[n + 2] = LinkLayer(LinkType.F, (1,))
    for h in range(2, n + 1):
        links[n + 1 + h] = LinkLayer(LinkType.Z, (3 * h - 4, 3 * h - 2))
    links[2 * n + 2] = LinkLayer(LinkType.F, (3 * n - 1,))

    rungs = {frozenset((n + 1 + j, j)) for j in range(2, n + 1)}
    joints = tuple(
        JointType.Z if frozenset(j.links) in rungs else JointType.T for j in L.joints
    )
    assignment = LayerAssignment(links, joints, 4 * n + 1)
    logger.debug(f"assigned {assignment.n_layers} layers to a ladder with {n} squares")
    return assignment


def layer_violations(L: Linkage, A: LayerAssignment) -> list[str]:
    """Human readable list of violated layer conditions (empty when valid)"""
    problems: list[str] = []
    if set(A.links) != set(L.links):
        problems.append("layer map does not cover exactly the links")
        return problems
    if len(A.joints) != len(L.joints):
        problems.append("joint type list has the wrong length")
        return problems

    used: dict[int, int] = {}
    for link, layer in A.links.items():
        expected = 1 if layer.kind is LinkType.F else 2
        if len(layer.layers) != expected:
            problems.append(f"link {link}: {layer.kind.value}-link needs {expected} layers")
            continue
        if expected == 2 and layer.low >= layer.high:
            problems.append(f"link {link}: layers {layer.layers} not increasing")
        if layer.kind is LinkType.Z and layer.high - layer.low != 2:
            problems.append(f"link {link}: Z-link spans {layer.layers}")
        for value in layer.layers:
            if not 0 <= value < A.n_layers:
                problems.append(f"link {link}: layer {value} outside 0..{A.n_layers - 1}")
            if value in used:
                problems.append(f"links {used[value]} and {link} share layer {value}")
            used[value] = link

    u_links = [(k, v) for k, v in sorted(A.links.items()) if v.kind is LinkType.U]
    for i, (k1, u1) in enumerate(u_links):
        for k2, u2 in u_links[i + 1 :]:
            a1, b1, a2, b2 = u1.low, u1.high, u2.low, u2.high
            if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
                problems.append(f"U-links {k1} and {k2} interleave")

    for joint, kind in zip(L.joints, A.joints):
        la, lb = A.links.get(joint.a), A.links.get(joint.b)
        if la is None or lb is None:
            continue
        if kind is JointType.T:
            if not any(abs(x - y) == 1 for x in la.layers for y in lb.layers):
                problems.append(f"T-joint {joint.links} does not join neighbouring layers")
        else:
            pairs = [(la, lb), (lb, la)]
            if not any(
                z.kind is LinkType.Z and z.low + 1 in other.layers for z, other in pairs
            ):
                problems.append(f"Z-joint {joint.links} does not straddle a layer")
    return problems


def validate_layers(L: Linkage, A: LayerAssignment) -> bool:
    problems = layer_violations(L, A)
    for problem in problems:
        logger.debug(problem)
    return not problems
