"""Deterministic SVG rendering of environments, tilings, targets, and tours.

Arcs are emitted as elliptical-arc commands at their exact flight radius.
All drawing happens inside a y-flipped group so path data stays in world
coordinates; output is byte-stable for identical inputs.
"""

from __future__ import annotations

import math

from .dubins import DubinsPath, Pose, step
from .planner import Tour
from .tiling import BeadGrid, Environment

_PALETTE = (
    "#888888",  # phase 0: fallback stage
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#bcbd22",
)


def _c(v: float) -> str:
    return f"{v:.9g}"


def _arc_cmds(center, r, a0, sweep, ccw) -> list[str]:
    """Elliptical-arc commands from angle a0 sweeping |sweep|, chunked <= pi/2."""
    cmds = []
    chunks = max(1, math.ceil(abs(sweep) / (math.pi / 2.0) - 1e-12))
    sgn = 1.0 if ccw else -1.0
    for i in range(1, chunks + 1):
        a = a0 + sgn * sweep * (i / chunks)
        x = center[0] + r * math.cos(a)
        y = center[1] + r * math.sin(a)
        cmds.append(f"A {_c(r)} {_c(r)} 0 0 {1 if ccw else 0} {_c(x)} {_c(y)}")
    return cmds


def _path_d(path: DubinsPath) -> str:
    pose = path.start
    d = [f"M {_c(pose.x)} {_c(pose.y)}"]
    for kind, param in path.segments:
        if param <= 0.0:
            continue
        if kind == "S":
            pose = step(pose, "S", param, path.rho)
            d.append(f"L {_c(pose.x)} {_c(pose.y)}")
        else:
            r = path.rho
            if kind == "L":
                center = (pose.x - r * math.sin(pose.theta), pose.y + r * math.cos(pose.theta))
                a0 = pose.theta - math.pi / 2.0
                d += _arc_cmds(center, r, a0, param, ccw=True)
            else:
                center = (pose.x + r * math.sin(pose.theta), pose.y - r * math.cos(pose.theta))
                a0 = pose.theta + math.pi / 2.0
                d += _arc_cmds(center, r, a0, param, ccw=False)
            pose = step(pose, kind, param, path.rho)
    return " ".join(d)


def _bead_outline_d(grid: BeadGrid, bid) -> str:
    """Tile outline: upper lens arc tip-to-tip, then the two lower arcs back."""
    cx, cy = grid.center(bid)
    l, rho, w = grid.l, grid.rho, grid.w
    r = 2.0 * rho
    pm = (cx - l, cy)
    pp = (cx + l, cy)
    bottom = (cx, cy - 0.5 * w)
    up_center = (cx, cy + 0.5 * w - r)
    gamma = math.atan2(pp[1] - up_center[1], pp[0] - up_center[0])
    sweep_up = math.pi - 2.0 * gamma
    d = [f"M {_c(pm[0])} {_c(pm[1])}"]
    d += _arc_cmds(up_center, r, math.pi - gamma, sweep_up, ccw=False)
    lo_right = (cx + l, cy - r)
    a0 = math.pi / 2.0
    a1 = math.atan2(bottom[1] - lo_right[1], bottom[0] - lo_right[0])
    d += _arc_cmds(lo_right, r, a0, a1 - a0, ccw=True)
    lo_left = (cx - l, cy - r)
    b0 = math.atan2(bottom[1] - lo_left[1], bottom[0] - lo_left[0])
    d += _arc_cmds(lo_left, r, b0, math.pi / 2.0 - b0, ccw=True)
    return " ".join(d) + " Z"


def render_svg(
    env: Environment,
    targets=None,
    tour: Tour | None = None,
    grid: BeadGrid | None = None,
    max_outlines: int = 4000,
) -> str:
    """SVG text: environment rectangle, optional tiling outlines, targets
    colored by the phase that visited them, and the tour trace."""
    W, H = env.width, env.height
    pad = 0.03 * max(W, H)
    stroke = max(W, H) / 600.0
    marker_r = max(W, H) / 250.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_c(-pad)} {_c(-pad)} {_c(W + 2 * pad)} {_c(H + 2 * pad)}" '
        f'width="800" height="{_c(800.0 * (H + 2 * pad) / (W + 2 * pad))}">',
        f'<g transform="translate(0,{_c(H)}) scale(1,-1)">',
        f'<rect x="0" y="0" width="{_c(W)}" height="{_c(H)}" '
        f'fill="white" stroke="black" stroke-width="{_c(stroke)}"/>',
    ]
    if grid is not None:
        ids = [b for b in grid.bead_ids() if grid.intersects_env(b)]
        if len(ids) <= max_outlines:
            for bid in ids:
                out.append(
                    f'<path d="{_bead_outline_d(grid, bid)}" fill="none" '
                    f'stroke="#c8c8c8" stroke-width="{_c(0.5 * stroke)}"/>'
                )
    if tour is not None:
        for seg in tour.segments:
            out.append(
                f'<path d="{_path_d(seg)}" fill="none" stroke="#333333" '
                f'stroke-width="{_c(stroke)}"/>'
            )
    if targets is not None:
        records = tour.visit_records if tour is not None else {}
        for t, (x, y) in enumerate(targets.points):
            rec = records.get(t)
            color = _PALETTE[rec.phase % len(_PALETTE)] if rec is not None else "#000000"
            out.append(f'<circle cx="{_c(x)}" cy="{_c(y)}" r="{_c(marker_r)}" fill="{color}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
