"""
SVG frames of linkage poses
Each frame shows the links as segments between their joints, the joints, the pen and
optionally the traced curve. All frames of a linkage share one viewBox computed from
the joint trajectories, and links are shaded by layer (darker links lie below).
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import svgwrite

from config.config import get_config
from kinematics.algebra import INFINITY
from kinematics.layers import LayerAssignment
from kinematics.linkage import Linkage, Trajectory, joint_trajectory, pen_trajectory, pose_at
from utils.logger import get_logger

from .grammar import format_parameter

logger = get_logger(__name__)

Point = tuple[float, float]


@dataclass(frozen=True)
class ViewBox:
    x: float
    y: float
    width: float
    height: float

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)


def _round(x: float, digits: int) -> float:
    return float(f"{x:.{digits}g}")


def _point(p: Point, digits: int) -> Point:
    return (_round(p[0], digits), _round(p[1], digits))


def sample_parameters(samples: int) -> np.ndarray:
    """t = tan(theta / 2) for theta evenly spaced in (-pi, pi); infinity is added separately"""
    theta = np.linspace(-math.pi, math.pi, samples + 1)[1:-1]
    return np.tan(theta / 2)


def _evaluate(traj: Trajectory, ts: np.ndarray) -> list[Point]:
    def values(p):
        # the zero polynomial has no coefficients
        coeffs = [float(c.re) for c in p.coeffs] or [0.0]
        return np.polynomial.polynomial.polyval(ts, coeffs)

    xs = values(traj.x_num) / values(traj.x_den)
    ys = values(traj.y_num) / values(traj.y_den)
    points = [(float(x), float(y)) for x, y in zip(xs, ys)]
    points.append(traj.at(INFINITY).to_floats())
    return points


def trace_points(L: Linkage, samples: Optional[int] = None) -> list[Point]:
    """Pen curve sampled over the whole parameter circle, closed at t = infinity"""
    samples = samples or get_config().render.trace_samples
    return _evaluate(pen_trajectory(L), sample_parameters(samples))


def view_box(L: Linkage, samples: Optional[int] = None) -> ViewBox:
    """Bounding box of all joint trajectories and the pen curve, padded on every side"""
    config = get_config().render
    ts = sample_parameters(samples or config.trace_samples)
    points = list(trace_points(L, samples))
    for idx in range(len(L.joints)):
        points.extend(_evaluate(joint_trajectory(L, idx), ts))
    xs = [p[0] for p in points if math.isfinite(p[0])]
    ys = [p[1] for p in points if math.isfinite(p[1])]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    size = max(x1 - x0, y1 - y0, 1e-9)
    pad = config.padding * size
    return ViewBox(x0 - pad, y0 - pad, (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad)


def _gray(brightness: float) -> str:
    level = int(round(40 + 180 * brightness))
    return f"rgb({level},{level},{level})"


def _draw_order(L: Linkage, layers: Optional[LayerAssignment]) -> list[int]:
    if layers is None:
        return list(L.links)
    return sorted(L.links, key=lambda link: (layers.links[link].low, link))


def render_frame(
    L: Linkage,
    t,
    layers: Optional[LayerAssignment] = None,
    trace: Optional[Sequence[Point]] = None,
    box: Optional[ViewBox] = None,
    filename: str = "frame.svg",
) -> svgwrite.Drawing:
    """
    Pose of L at parameter t. Joint circles carry ids 'joint-<index>', link strokes
    'link-<id>'; coordinates are rounded to the configured significant digits.
    """
    config = get_config().render
    digits = config.precision
    box = box or view_box(L)
    pose = pose_at(L, t)

    height_px = max(1, int(round(config.size * box.height / box.width)))
    dwg = svgwrite.Drawing(filename, size=(f"{config.size}px", f"{height_px}px"))
    dwg.viewbox(box.x, -(box.y + box.height), box.width, box.height)
    dwg.add(
        dwg.rect(insert=(box.x, -(box.y + box.height)), size=(box.width, box.height), fill="white")
    )
    # y axis points up
    scene = dwg.g(transform="scale(1,-1)")
    stroke = box.diagonal * 0.004

    if trace:
        scene.add(
            dwg.polyline(
                points=[_point(p, digits) for p in trace],
                fill="none",
                stroke="#3b6fb6",
                stroke_width=stroke,
                id="trace",
            )
        )

    joints = [_point(p.to_floats(), digits) for p in pose.joint_positions]
    pen = _point(pose.pen.to_floats(), digits)
    for link in _draw_order(L, layers):
        color = _gray(layers.brightness(link)) if layers else "#404040"
        group = dwg.g(
            id=f"link-{link}", stroke=color, stroke_width=stroke * 2.5, stroke_linecap="round"
        )
        for p, q in L.segments(link):
            group.add(dwg.line(start=joints[p], end=joints[q]))
        if link == L.drawing_link:
            incident = L.joints_of(link)
            if incident:
                group.add(dwg.line(start=joints[incident[-1]], end=pen))
        scene.add(group)

    radius = box.diagonal * config.joint_radius
    for idx, position in enumerate(joints):
        scene.add(
            dwg.circle(
                center=position,
                r=radius,
                fill="white",
                stroke="black",
                stroke_width=stroke,
                id=f"joint-{idx}",
            )
        )
    scene.add(dwg.circle(center=pen, r=radius * 0.8, fill="#c0392b", id="pen"))
    dwg.add(scene)
    logger.debug(f"rendered frame at t = {format_parameter(t)}")
    return dwg


def render_trace(
    L: Linkage, trace: Sequence[Point], box: Optional[ViewBox] = None, filename: str = "trace.svg"
) -> svgwrite.Drawing:
    config = get_config().render
    box = box or view_box(L)
    height_px = max(1, int(round(config.size * box.height / box.width)))
    dwg = svgwrite.Drawing(filename, size=(f"{config.size}px", f"{height_px}px"))
    dwg.viewbox(box.x, -(box.y + box.height), box.width, box.height)
    scene = dwg.g(transform="scale(1,-1)")
    scene.add(
        dwg.polyline(
            points=[_point(p, config.precision) for p in trace],
            fill="none",
            stroke="#3b6fb6",
            stroke_width=box.diagonal * 0.004,
            id="trace",
        )
    )
    dwg.add(scene)
    return dwg


def write_frames(
    L: Linkage,
    ts: Sequence,
    out_dir: Path,
    layers: Optional[LayerAssignment] = None,
    trace: bool = False,
) -> list[Path]:
    """
    One SVG per parameter (frame_00.svg, ...) sharing a viewBox; with trace=True the
    pen curve is overlaid, and without parameters only trace.svg is written.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    box = view_box(L)
    curve = trace_points(L) if trace else None
    written: list[Path] = []
    for i, t in enumerate(ts):
        path = out_dir / f"frame_{i:02d}.svg"
        render_frame(L, t, layers, curve, box, filename=str(path)).save()
        written.append(path)
    if curve is not None and not ts:
        path = out_dir / "trace.svg"
        render_trace(L, curve, box, filename=str(path)).save()
        written.append(path)
    logger.info(f"wrote {len(written)} SVG files to {out_dir}")
    return written
