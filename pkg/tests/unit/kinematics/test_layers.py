from dataclasses import replace

import pytest

from kinematics.algebra import PlanePoint
from kinematics.layers import (
    JointType,
    LinkLayer,
    LinkType,
    assign_layers,
    layer_violations,
    validate_layers,
)
from kinematics.linkage import Joint, Linkage, LinkageKind, flip_linkage
from tests.conftest import kel
from utils.error_handling import NotLadder


def test_three_square_ladder_layout(ellipse_ladder):
    A = assign_layers(ellipse_ladder)
    assert A.n_layers == 13
    assert A.links == {
        1: LinkLayer(LinkType.U, (0, 12)),
        2: LinkLayer(LinkType.U, (3, 11)),
        3: LinkLayer(LinkType.U, (6, 10)),
        4: LinkLayer(LinkType.F, (9,)),
        5: LinkLayer(LinkType.F, (1,)),
        6: LinkLayer(LinkType.Z, (2, 4)),
        7: LinkLayer(LinkType.Z, (5, 7)),
        8: LinkLayer(LinkType.F, (8,)),
    }
    z_joints = [i for i, kind in enumerate(A.joints) if kind is JointType.Z]
    assert z_joints == [7, 8]
    assert validate_layers(ellipse_ladder, A)


def test_brightness_runs_from_bottom_to_top(ellipse_ladder):
    A = assign_layers(ellipse_ladder)
    assert A.brightness(1) == 0.0
    assert A.brightness(4) == pytest.approx(9 / 12)


def test_four_bar_layout_is_valid():
    L = flip_linkage(kel((0, 1), (-3, 0)), kel((0, -2), (-2, -1)))
    A = assign_layers(L)
    assert A.n_layers == 5
    assert validate_layers(L, A)


def test_shared_layer_is_reported(ellipse_ladder):
    A = assign_layers(ellipse_ladder)
    links = dict(A.links)
    links[8] = LinkLayer(LinkType.F, (9,))
    problems = layer_violations(ellipse_ladder, replace(A, links=links))
    assert any("share layer 9" in p for p in problems)


def test_interleaved_u_links_are_reported(ellipse_ladder):
    A = assign_layers(ellipse_ladder)
    links = dict(A.links)
    links[2] = LinkLayer(LinkType.U, (3, 13))
    problems = layer_violations(ellipse_ladder, replace(A, links=links, n_layers=14))
    assert any("interleave" in p for p in problems)


def test_joint_types_are_checked(ellipse_ladder):
    A = assign_layers(ellipse_ladder)
    joints = (JointType.Z,) + A.joints[1:]
    assert not validate_layers(ellipse_ladder, replace(A, joints=joints))


def test_open_chain_has_no_ladder_layout(ellipse_chain):
    with pytest.raises(NotLadder):
        assign_layers(ellipse_chain)


def _bare_ladder(n):
    top = [(h, h + 1) for h in range(1, n + 1)]
    bottom = [(n + 1 + h, n + 2 + h) for h in range(1, n + 1)]
    rungs = [(n + 1 + j, j) for j in range(1, n + 2)]
    joints = tuple(Joint(a, b, PlanePoint.origin()) for a, b in top + bottom + rungs)
    return Linkage(2 * n + 2, joints, LinkageKind.LADDER)


@pytest.mark.parametrize("n", range(1, 7))
def test_ladder_layouts_of_any_size(n):
    L = _bare_ladder(n)
    A = assign_layers(L)
    assert A.n_layers == 4 * n + 1
    assert layer_violations(L, A) == []
    assert sum(kind is JointType.Z for kind in A.joints) == n - 1
