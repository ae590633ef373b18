import json
import math
from fractions import Fraction

import numpy as np
import pytest

from documents.render import sample_parameters, trace_points
from documents.schema import linkage_to_document, load_linkage, read_input
from kinematics.algebra import Backend
from kinematics.collision import default_ordering, detect_collisions, event_residual
from kinematics.layers import assign_layers, validate_layers
from kinematics.linkage import (
    construct_strong,
    count_report,
    cycle_residual,
    joint_trajectory,
    pose_at,
)

J_CURVE = {
    "schema": "linkforge/curve@1",
    "f": "-321880t^5-436132t^4-237449t^3-64488t^2-8666t-451",
    "g": "-336018t^5-472949t^4-270569t^3-78158t^2-11325t-651",
    "h": "170(7225t^6+13770t^5+11187t^4+4908t^3+1219t^2+162t+9)",
}


def test_ellipse_curve_to_ladder(ellipse_curve_json):
    """Curve document to a layered ladder that survives a document round trip"""
    source = read_input(ellipse_curve_json)
    P, C = source.prepared(drawing=True)
    L = construct_strong(P, C=C)
    layers = assign_layers(L)
    assert validate_layers(L, layers)
    assert (L.n_links, len(L.joints)) == (8, 10)

    restored, restored_layers = load_linkage(linkage_to_document(L, layers).to_json())
    assert restored == L
    assert restored_layers == layers

    for x, y in trace_points(restored, samples=100):
        assert abs((x + 1) ** 2 + 4 * y**2 - 1) < 1e-6


def _joint_paths(L, ts):
    def values(p):
        coeffs = [float(c.re) for c in p.coeffs] or [0.0]
        return np.polynomial.polynomial.polyval(ts, coeffs)

    paths = []
    for idx in range(len(L.joints)):
        traj = joint_trajectory(L, idx)
        x = values(traj.x_num) / values(traj.x_den)
        y = values(traj.y_num) / values(traj.y_den)
        paths.append(x + 1j * y)
    return paths


def _grid_crossings(L, ordering, samples=4000):
    """(joint, link, t0, t1) where a pin crosses the inside of a link bar between grid points"""
    ts = sample_parameters(samples)
    paths = _joint_paths(L, ts)
    position = {link: i for i, link in enumerate(ordering)}
    for idx, joint in enumerate(L.joints):
        lo, hi = sorted((position[joint.a], position[joint.b]))
        for link in ordering[lo + 1 : hi]:
            for p, q in L.segments(link):
                d = paths[p] - paths[q]
                rel = np.conj(d) * (paths[idx] - paths[q])
                s = rel.real / np.abs(d) ** 2
                inside = (s > 0.01) & (s < 0.99)
                flips = np.sign(rel.imag[:-1]) * np.sign(rel.imag[1:]) < 0
                for i in np.nonzero(flips & inside[:-1] & inside[1:])[0]:
                    yield idx, link, float(ts[i]), float(ts[i + 1])


def _assert_grid_crossings_detected(L, ordering):
    events = detect_collisions(L, ordering)
    crossings = list(_grid_crossings(L, ordering))
    for idx, link, t0, t1 in crossings:
        assert any(
            e.joint == idx and e.link == link and t0 - 1e-9 <= float(e.t) <= t1 + 1e-9
            for e in events
            if not e.at_infinity
        ), (idx, link, t0, t1)
    return crossings


def test_ellipse_ladder_grid_crossings_are_detected(ellipse_ladder):
    _assert_grid_crossings_detected(ellipse_ladder, tuple(range(1, 9)))


@pytest.fixture(scope="module")
def j_linkage():
    source = read_input(json.dumps(J_CURVE))
    P, _ = source.prepared()
    return source.curve, P, construct_strong(P)


@pytest.mark.slow
class TestJCurve:
    def test_counts(self, j_linkage):
        _, _, L = j_linkage
        report = count_report(L)
        assert len(L.meta.factors) == 12
        assert (report.links, report.joints) == (26, 37)
        assert report.within_bounds

    def test_pen_draws_the_curve_exactly(self, j_linkage):
        curve, _, L = j_linkage
        assert L.backend is Backend.EXACT
        for k in range(-50, 50):
            t = Fraction(k, 13)
            assert pose_at(L, t).pen == curve.point_at(t)

    def test_approximate_backend_draws_the_curve(self, j_linkage):
        curve, P, _ = j_linkage
        L = construct_strong(P.to_approx())
        assert L.backend is Backend.APPROX
        assert (L.n_links, len(L.joints)) == (26, 37)
        for t in np.linspace(-3.0, 3.0, 100):
            expected = curve.point_at(Fraction(t)).to_floats()
            pose = pose_at(L, float(t))
            x, y = pose.pen.to_floats()
            assert math.hypot(x - expected[0], y - expected[1]) < 1e-9
            assert cycle_residual(L, pose) < 1e-9

    def test_layer_ordering_collisions(self, j_linkage):
        _, _, L = j_linkage
        ordering = default_ordering(L)
        assert ordering[:4] == (1, 14, 15, 2)
        events = detect_collisions(L)
        finite = [e for e in events if not e.at_infinity]
        assert (len(finite), len(events) - len(finite)) == (22, 0)
        for event in events:
            assert event.link not in event.links
            assert event_residual(L, event) < 1e-9

    def test_grid_crossings_are_detected(self, j_linkage):
        _, _, L = j_linkage
        assert _assert_grid_crossings_detected(L, default_ordering(L))
