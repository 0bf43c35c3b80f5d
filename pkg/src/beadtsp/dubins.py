"""Exact minimum-length bounded-curvature (Dubins) point-to-point paths.

A path is a word of at most three segments, each either a circular arc
flown at the path's turn radius or a straight line.  The six candidate
words (LSL, RSR, RSL, LSR, RLR, LRL) are solved in closed form in a
normalized frame and the shortest feasible one is the global optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TAU = 2.0 * math.pi

WORDS = ("LSL", "RSR", "RSL", "LSR", "RLR", "LRL")


def mod2pi(theta: float) -> float:
    """Normalize an angle into [0, 2*pi)."""
    r = theta % TAU
    if r >= TAU:  # guards the float corner where tiny negatives wrap to TAU
        r = 0.0
    return r


def angle_diff(a: float, b: float) -> float:
    """Smallest absolute difference between two angles."""
    d = mod2pi(a - b)
    return min(d, TAU - d)


@dataclass(frozen=True)
class Pose:
    """Planar position plus heading (radians, stored in [0, 2*pi))."""

    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.theta)):
            raise ValueError("pose coordinates must be finite")
        object.__setattr__(self, "theta", mod2pi(self.theta))

    def position(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class DubinsPath:
    """One word of arc/straight segments flown from ``start``.

    ``params`` holds the three segment measures in word order: radians
    swept for L/R segments, length units for the S segment.  Curvature is
    exactly 1/rho on arcs and zero on straights.
    """

    start: Pose
    rho: float
    word: str
    params: tuple[float, float, float]

    def __post_init__(self):
        if self.word not in WORDS:
            raise ValueError(f"unknown word {self.word!r}")
        if not (self.rho > 0.0 and math.isfinite(self.rho)):
            raise ValueError("rho must be positive and finite")
        cleaned = []
        for p in self.params:
            if p < 0.0:
                if p < -1e-9:
                    raise ValueError("segment parameters must be nonnegative")
                p = 0.0
            cleaned.append(float(p))
        object.__setattr__(self, "params", tuple(cleaned))

    @property
    def segments(self) -> tuple[tuple[str, float], ...]:
        return tuple(zip(self.word, self.params))


def path_length(path: DubinsPath) -> float:
    """Arc params times rho plus the straight param."""
    total = 0.0
    for kind, p in path.segments:
        total += p if kind == "S" else path.rho * p
    return total


def step(pose: Pose, kind: str, amount: float, rho: float) -> Pose:
    """Advance a pose along one segment (amount: radians for L/R, length for S)."""
    x, y, th = pose.x, pose.y, pose.theta
    if kind == "S":
        return Pose(x + amount * math.cos(th), y + amount * math.sin(th), th)
    if kind == "L":
        return Pose(
            x - rho * math.sin(th) + rho * math.sin(th + amount),
            y + rho * math.cos(th) - rho * math.cos(th + amount),
            th + amount,
        )
    if kind == "R":
        return Pose(
            x + rho * math.sin(th) - rho * math.sin(th - amount),
            y - rho * math.cos(th) + rho * math.cos(th - amount),
            th - amount,
        )
    raise ValueError(f"unknown segment kind {kind!r}")


def end_pose(path: DubinsPath) -> Pose:
    pose = path.start
    for kind, p in path.segments:
        pose = step(pose, kind, p, path.rho)
    return pose


def sample_path(path: DubinsPath, spacing: float) -> list[Pose]:
    """Poses along the path at arc-length intervals <= spacing, endpoints included."""
    if not (spacing > 0.0):
        raise ValueError("spacing must be positive")
    poses = [path.start]
    pose = path.start
    for kind, p in path.segments:
        seg_len = p if kind == "S" else path.rho * p
        if seg_len <= 0.0:
            continue
        steps = max(1, math.ceil(seg_len / spacing - 1e-12))
        for i in range(1, steps + 1):
            frac = i / steps
            amount = p * frac
            poses.append(step(pose, kind, amount, path.rho))
        pose = poses[-1]
    return poses


# --- closed-form word solutions in the normalized frame -------------------
#
# The frame places the start at the origin heading alpha and the end at
# (d, 0) heading beta, with all lengths divided by rho.  Returned tuples
# are (t, p, q): first arc sweep, middle measure, last arc sweep.  None
# signals that the word has no realization for this query.

_EPS_NEG = -1e-12


def _lsl(alpha, beta, d):
    sa, sb = math.sin(alpha), math.sin(beta)
    ca, cb = math.cos(alpha), math.cos(beta)
    p_sq = 2.0 + d * d - 2.0 * math.cos(alpha - beta) + 2.0 * d * (sa - sb)
    if p_sq < _EPS_NEG:
        return None
    tmp = math.atan2(cb - ca, d + sa - sb)
    t = mod2pi(tmp - alpha)
    q = mod2pi(beta - tmp)
    return t, math.sqrt(max(p_sq, 0.0)), q


def _rsr(alpha, beta, d):
    sa, sb = math.sin(alpha), math.sin(beta)
    ca, cb = math.cos(alpha), math.cos(beta)
    p_sq = 2.0 + d * d - 2.0 * math.cos(alpha - beta) + 2.0 * d * (sb - sa)
    if p_sq < _EPS_NEG:
        return None
    tmp = math.atan2(ca - cb, d - sa + sb)
    t = mod2pi(alpha - tmp)
    q = mod2pi(tmp - beta)
    return t, math.sqrt(max(p_sq, 0.0)), q


def _lsr(alpha, beta, d):
    sa, sb = math.sin(alpha), math.sin(beta)
    ca, cb = math.cos(alpha), math.cos(beta)
    p_sq = -2.0 + d * d + 2.0 * math.cos(alpha - beta) + 2.0 * d * (sa + sb)
    if p_sq < _EPS_NEG:
        return None
    p = math.sqrt(max(p_sq, 0.0))
    tmp = math.atan2(-ca - cb, d + sa + sb) - math.atan2(-2.0, p)
    t = mod2pi(tmp - alpha)
    q = mod2pi(tmp - mod2pi(beta))
    return t, p, q


def _rsl(alpha, beta, d):
    sa, sb = math.sin(alpha), math.sin(beta)
    ca, cb = math.cos(alpha), math.cos(beta)
    p_sq = -2.0 + d * d + 2.0 * math.cos(alpha - beta) - 2.0 * d * (sa + sb)
    if p_sq < _EPS_NEG:
        return None
    p = math.sqrt(max(p_sq, 0.0))
    tmp = math.atan2(ca + cb, d - sa - sb) - math.atan2(2.0, p)
    t = mod2pi(alpha - tmp)
    q = mod2pi(beta - tmp)
    return t, p, q


def _rlr(alpha, beta, d):
    sa, sb = math.sin(alpha), math.sin(beta)
    ca, cb = math.cos(alpha), math.cos(beta)
    tmp = (6.0 - d * d + 2.0 * math.cos(alpha - beta) + 2.0 * d * (sa - sb)) / 8.0
    if abs(tmp) > 1.0 + 1e-12:
        return None
    tmp = min(1.0, max(-1.0, tmp))
    p = mod2pi(TAU - math.acos(tmp))
    phi = math.atan2(ca - cb, d - sa + sb)
    t = mod2pi(alpha - phi + mod2pi(p / 2.0))
    q = mod2pi(alpha - beta - t + mod2pi(p))
    return t, p, q


def _lrl(alpha, beta, d):
    sa, sb = math.sin(alpha), math.sin(beta)
    ca, cb = math.cos(alpha), math.cos(beta)
    tmp = (6.0 - d * d + 2.0 * math.cos(alpha - beta) + 2.0 * d * (sb - sa)) / 8.0
    if abs(tmp) > 1.0 + 1e-12:
        return None
    tmp = min(1.0, max(-1.0, tmp))
    p = mod2pi(TAU - math.acos(tmp))
    phi = math.atan2(ca - cb, d + sa - sb)
    t = mod2pi(-alpha - phi + p / 2.0)
    q = mod2pi(mod2pi(beta) - alpha - t + mod2pi(p))
    return t, p, q


_SOLVERS = {"LSL": _lsl, "RSR": _rsr, "RSL": _rsl, "LSR": _lsr, "RLR": _rlr, "LRL": _lrl}


def _frame(start: Pose, end: Pose, rho: float) -> tuple[float, float, float]:
    dx = end.x - start.x
    dy = end.y - start.y
    dist = math.hypot(dx, dy)
    theta = math.atan2(dy, dx) if dist > 0.0 else 0.0
    return mod2pi(start.theta - theta), mod2pi(end.theta - theta), dist / rho


def _build(start: Pose, rho: float, word: str, tpq) -> DubinsPath:
    t, p, q = tpq
    if word[1] == "S":
        params = (t, p * rho, q)
    else:
        params = (t, p, q)
    return DubinsPath(start, rho, word, params)


def word_length(word: str, start: Pose, end: Pose, rho: float) -> float | None:
    """Length of one word's realization, or None when the word is infeasible."""
    if word not in WORDS:
        raise ValueError(f"unknown word {word!r}")
    if not (rho > 0.0 and math.isfinite(rho)):
        raise ValueError("rho must be positive and finite")
    alpha, beta, d = _frame(start, end, rho)
    tpq = _SOLVERS[word](alpha, beta, d)
    if tpq is None:
        return None
    t, p, q = tpq
    return rho * (t + p + q)


def solve_word(word: str, start: Pose, end: Pose, rho: float) -> DubinsPath | None:
    """Realize one word as a path, or None when infeasible."""
    alpha, beta, d = _frame(start, end, rho)
    tpq = _SOLVERS[word](alpha, beta, d)
    if tpq is None:
        return None
    return _build(start, rho, word, tpq)


def shortest_path(start: Pose, end: Pose, rho: float) -> DubinsPath:
    """Minimum-length path over all six words (ties broken by word order)."""
    if not (rho > 0.0 and math.isfinite(rho)):
        raise ValueError("rho must be positive and finite")
    alpha, beta, d = _frame(start, end, rho)
    best = None
    best_cost = math.inf
    for word in WORDS:
        tpq = _SOLVERS[word](alpha, beta, d)
        if tpq is None:
            continue
        cost = sum(tpq)
        if cost < best_cost:
            best = (word, tpq)
            best_cost = cost
    assert best is not None  # at least one word always exists
    return _build(start, rho, best[0], best[1])


def straight_path(start: Pose, length: float, rho: float) -> DubinsPath:
    """A single straight segment encoded as a degenerate LSL word."""
    return DubinsPath(start, rho, "LSL", (0.0, float(length), 0.0))
