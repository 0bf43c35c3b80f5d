"""Tour planning: recursive bead-tiling sweeps plus leftover heuristics.

The main planner sweeps the bead lattice in phases.  Phase i groups beads
into meta-beads of 2**(i-1) cells and flies one boustrophedon sweep over
the meta-bead rows, servicing exactly one not-yet-visited target per
meta-bead that holds any (chosen as the smallest target index).  Phase 1
services targets with the bead traversal arc; later phases fly shortest
bounded-curvature legs entry -> target -> exit with the target heading
aligned to the sweep.  Consecutive serviced meta-beads and row changes
are joined by shortest Dubins links.  After floor(log2 n) + 1 phases the
leftovers go to the alternating (or greedy) heuristic and the tour is
closed back to its start pose.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

from .bead import traversal_path, traversal_target_offset
from .dubins import (
    TAU,
    DubinsPath,
    Pose,
    angle_diff,
    end_pose,
    mod2pi,
    path_length,
    shortest_path,
    step,
    straight_path,
)
from .tiling import Environment, MetaBeadId, TilingError, build_tiling

FALLBACKS = ("alternating", "greedy")

_HEADING_CANDIDATES = tuple(k * TAU / 16.0 for k in range(16))


@dataclass(frozen=True)
class TargetSet:
    """Ordered target points; a target's index is its position in ``points``."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        if not pts:
            raise ValueError("target set must be non-empty")
        for x, y in pts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError("target coordinates must be finite")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class VisitRecord:
    phase: int  # 0 marks the post-phase fallback stage
    position: float  # arc length along the tour at which the target is met


@dataclass(frozen=True)
class Tour:
    start: Pose
    segments: tuple[DubinsPath, ...]
    visit_records: dict[int, VisitRecord]
    closed: bool

    @property
    def total_length(self) -> float:
        return sum(path_length(s) for s in self.segments)

    @property
    def end(self) -> Pose:
        return end_pose(self.segments[-1]) if self.segments else self.start


@dataclass(frozen=True)
class PhaseStats:
    """Per-phase measurements: beads holding unvisited targets at inception
    (v), meta-bead counts (m), swept lengths, targets served, plus the
    leftover/fallback/closure accounting."""

    v: tuple[int, ...]
    m: tuple[int, ...]
    phase_lengths: tuple[float, ...]
    targets_served: tuple[int, ...]
    leftover_after_all_phases: int
    fallback_length: float
    closure_length: float


class _TourBuilder:
    def __init__(self, rho: float):
        self.rho = rho
        self.segments: list[DubinsPath] = []
        self.records: dict[int, VisitRecord] = {}
        self.start: Pose | None = None
        self.pose: Pose | None = None
        self.cum = 0.0

    def add(self, path: DubinsPath) -> None:
        if self.start is None:
            self.start = path.start
        self.segments.append(path)
        self.cum += path_length(path)
        self.pose = end_pose(path)

    def link_to(self, target: Pose) -> None:
        if self.pose is None:
            self.start = target
            self.pose = target
            return
        if (
            math.hypot(self.pose.x - target.x, self.pose.y - target.y) < 1e-12
            and angle_diff(self.pose.theta, target.theta) < 1e-12
        ):
            self.pose = target
            return
        self.add(shortest_path(self.pose, target, self.rho))

    def finish(self, closed: bool) -> Tour:
        assert self.start is not None
        return Tour(self.start, tuple(self.segments), dict(self.records), closed)


# --- Euclidean ordering helpers -------------------------------------------


def _dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _nn_order(points, idxs, anchor=None) -> list[int]:
    """Nearest-neighbor visit order (Euclidean); ties to the smaller index."""
    remaining = list(idxs)
    order = []
    if anchor is None:
        cur = remaining.pop(0)
        order.append(cur)
        cx, cy = points[cur]
    else:
        cx, cy = anchor
    while remaining:
        best = min(remaining, key=lambda t: ((points[t][0] - cx) ** 2 + (points[t][1] - cy) ** 2, t))
        remaining.remove(best)
        order.append(best)
        cx, cy = points[best]
    return order


def _two_opt(points, order, anchor=None, closed=True) -> list[int]:
    """First-improvement 2-opt until no improving move, fixed scan order.

    ``anchor`` is an optional fixed pre-tour position (sequence head that
    must not move); ``closed`` includes the wraparound edge to the head.
    """
    seq = ([anchor] if anchor is not None else []) + [points[t] for t in order]
    m = len(seq)
    idx = list(range(m))
    if m >= 4 or (m == 3 and closed):
        improved = True
        passes = 0
        while improved and passes < 500:
            improved = False
            passes += 1
            for i in range(0, m - 2):
                j_top = m - 1 if closed else m - 2
                for j in range(i + 1, j_top + 1):
                    if i == 0 and closed and j == m - 1:
                        continue  # full reversal, no-op for a cycle
                    a = seq[idx[i]]
                    b = seq[idx[i + 1]]
                    c = seq[idx[j]]
                    if closed or j + 1 <= m - 1:
                        d = seq[idx[(j + 1) % m]]
                        delta = _dist(a, c) + _dist(b, d) - _dist(a, b) - _dist(c, d)
                    else:
                        delta = _dist(a, c) - _dist(a, b)
                    if delta < -1e-12:
                        idx[i + 1 : j + 1] = reversed(idx[i + 1 : j + 1])
                        improved = True
                        break
                if improved:
                    break
    offset = 1 if anchor is not None else 0
    return [order[k - offset] for k in idx if k >= offset]


def _pose_at(points, t, heading) -> Pose:
    return Pose(points[t][0], points[t][1], heading)


def _edge_heading(points, a, b) -> float:
    return mod2pi(math.atan2(points[b][1] - points[a][1], points[b][0] - points[a][0]))


def _best_free_heading(prev_pose, point, next_pose, rho: float) -> float:
    """Pick the 16-candidate heading minimizing the two adjacent Dubins legs."""
    best = 0.0
    best_cost = math.inf
    for psi in _HEADING_CANDIDATES:
        cand = Pose(point[0], point[1], psi)
        cost = 0.0
        if prev_pose is not None:
            cost += path_length(shortest_path(prev_pose, cand, rho))
        if next_pose is not None:
            cost += path_length(shortest_path(cand, next_pose, rho))
        if cost < best_cost:
            best_cost = cost
            best = psi
    return best


def _alternating_headings(points, order, rho, tail_prev_pose, tail_next_pose):
    """Heading per target: straight-edge pairs share their edge direction."""
    headings = {}
    for k in range(0, len(order) - 1, 2):
        h = _edge_heading(points, order[k], order[k + 1])
        headings[order[k]] = h
        headings[order[k + 1]] = h
    if len(order) % 2 == 1:
        tail = order[-1]
        if len(order) >= 2:
            prev = _pose_at(points, order[-2], headings[order[-2]])
        else:
            prev = tail_prev_pose
        headings[tail] = _best_free_heading(prev, points[tail], tail_next_pose, rho)
    return headings


def _fly_alternating(builder: _TourBuilder, points, order, headings, rho, phase=0):
    """Fly the order: Dubins link to each pair head, straight to its mate."""
    for k in range(0, len(order) - 1, 2):
        a, b = order[k], order[k + 1]
        apose = _pose_at(points, a, headings[a])
        builder.link_to(apose)
        builder.records[a] = VisitRecord(phase, builder.cum)
        gap = _dist(points[a], points[b])
        if gap > 0.0:
            builder.add(straight_path(apose, gap, rho))
        builder.records[b] = VisitRecord(phase, builder.cum)
    if len(order) % 2 == 1:
        tail = order[-1]
        builder.link_to(_pose_at(points, tail, headings[tail]))
        builder.records[tail] = VisitRecord(phase, builder.cum)


def _greedy_chain(builder: _TourBuilder, points, idxs, rho, phase=0):
    """Repeatedly fly to the unvisited target of least Dubins cost."""
    remaining = sorted(idxs)
    while remaining:
        best = None
        best_cost = math.inf
        for t in remaining:
            for psi in _HEADING_CANDIDATES:
                cand = Pose(points[t][0], points[t][1], psi)
                cost = path_length(shortest_path(builder.pose, cand, rho))
                if cost < best_cost:
                    best_cost = cost
                    best = (t, cand)
        t, pose = best
        builder.link_to(pose)
        builder.records[t] = VisitRecord(phase, builder.cum)
        remaining.remove(t)


# --- public operations -----------------------------------------------------


def alternating_algorithm(targets: TargetSet, rho: float, start: Pose | None = None) -> Tour:
    """Closed tour with alternate edges of a Euclidean order flown straight.

    Orders the targets by nearest-neighbor construction plus 2-opt, fixes
    headings so each odd edge of the order is a straight segment shared by
    its endpoints, and joins even edges (and the optional start pose) with
    shortest Dubins paths.
    """
    points = targets.points
    m = len(points)
    anchor = (start.x, start.y) if start is not None else None
    order = _nn_order(points, list(range(m)), anchor)
    order = _two_opt(points, order, anchor, closed=True)
    if m % 2 == 1 and m >= 3:
        tail_next = _pose_at(points, order[0], _edge_heading(points, order[0], order[1]))
    else:
        tail_next = start  # m == 1: loop back to the start pose (or nowhere)
    headings = _alternating_headings(points, order, rho, start, tail_next)
    builder = _TourBuilder(rho)
    if start is not None:
        builder.link_to(start)
    _fly_alternating(builder, points, order, headings, rho)
    builder.link_to(builder.start)
    return builder.finish(closed=True)


def greedy_fallback(targets: TargetSet, start: Pose, rho: float) -> Tour:
    """Closed tour built by repeated nearest-by-Dubins-length hops."""
    builder = _TourBuilder(rho)
    builder.link_to(start)
    _greedy_chain(builder, targets.points, range(len(targets)), rho)
    builder.link_to(start)
    return builder.finish(closed=True)


def recursive_bead_tiling(
    targets: TargetSet,
    env: Environment,
    rho: float,
    fallback: str = "alternating",
) -> tuple[Tour, PhaseStats]:
    """Run the phased bead sweep over the targets and close the tour.

    Falls back to the alternating tour over the whole set when the bead
    sizing is infeasible (point count too small for a sub-2*rho bead).
    """
    if fallback not in FALLBACKS:
        raise ValueError(f"fallback must be one of {FALLBACKS}")
    points = targets.points
    n = len(points)
    for p in points:
        if not env.contains(p):
            raise ValueError(f"target {p} outside the environment")
    try:
        grid = build_tiling(env, n, rho)
    except TilingError:
        tour = alternating_algorithm(targets, rho)
        stats = PhaseStats((), (), (), (), n, tour.total_length, 0.0)
        return tour, stats

    bead_of = [grid.locate(p) for p in points]
    unvisited = set(range(n))
    num_phases = int(math.floor(math.log2(n))) + 1 if n > 1 else 1
    builder = _TourBuilder(rho)
    v_list, m_list, len_list, served_list = [], [], [], []

    for phase in range(1, num_phases + 1):
        v_list.append(len({bead_of[t] for t in unvisited}))
        m_list.append(grid.meta_count(phase))
        phase_start = builder.cum
        service: dict[MetaBeadId, int] = {}
        for t in sorted(unvisited):
            mid = grid.meta_bead_of(bead_of[t], phase)
            if mid not in service:
                service[mid] = t
        served = 0
        lo, hi = grid.meta_col_range(phase)
        for i in range(grid.meta_row_count(phase)):
            direction = +1 if i % 2 == 0 else -1
            cols = range(lo, hi + 1) if direction > 0 else range(hi, lo - 1, -1)
            for mc in cols:
                t = service.get(MetaBeadId(phase, i, mc))
                if t is None:
                    continue
                if phase == 1:
                    bead = grid.bead(bead_of[t])
                    path = traversal_path(bead, points[t], direction)
                    offset = traversal_target_offset(bead, points[t], direction)
                    builder.link_to(path.start)
                    builder.records[t] = VisitRecord(phase, builder.cum + offset)
                    builder.add(path)
                else:
                    entry, exit_ = grid.meta_bead_entry_exit(MetaBeadId(phase, i, mc), direction)
                    tpose = Pose(points[t][0], points[t][1], 0.0 if direction > 0 else math.pi)
                    builder.link_to(entry)
                    builder.add(shortest_path(builder.pose, tpose, rho))
                    builder.records[t] = VisitRecord(phase, builder.cum)
                    builder.add(shortest_path(tpose, exit_, rho))
                unvisited.discard(t)
                served += 1
        served_list.append(served)
        len_list.append(builder.cum - phase_start)

    leftovers = sorted(unvisited)
    fallback_start = builder.cum
    if leftovers:
        if fallback == "alternating":
            order = _nn_order(points, leftovers, (builder.pose.x, builder.pose.y))
            order = _two_opt(points, order, (builder.pose.x, builder.pose.y), closed=False)
            headings = _alternating_headings(points, order, rho, builder.pose, builder.start)
            _fly_alternating(builder, points, order, headings, rho)
        else:
            _greedy_chain(builder, points, leftovers, rho)
    fallback_length = builder.cum - fallback_start
    closure_start = builder.cum
    builder.link_to(builder.start)
    closure_length = builder.cum - closure_start
    stats = PhaseStats(
        tuple(v_list),
        tuple(m_list),
        tuple(len_list),
        tuple(served_list),
        len(leftovers),
        fallback_length,
        closure_length,
    )
    return builder.finish(closed=True), stats


# --- validation ------------------------------------------------------------


@dataclass
class TourReport:
    """Violation lists from validate_tour; empty lists mean a clean tour."""

    continuity: list = field(default_factory=list)
    curvature: list = field(default_factory=list)
    unvisited: list = field(default_factory=list)
    closure_position_error: float = 0.0
    closure_heading_error: float = 0.0
    closed_checked: bool = False

    @property
    def closure_ok(self) -> bool:
        if not self.closed_checked:
            return True
        return self.closure_position_error <= 1e-9 and self.closure_heading_error <= 1e-9

    @property
    def ok(self) -> bool:
        return not self.continuity and not self.curvature and not self.unvisited and self.closure_ok

    def summary(self) -> str:
        return (
            f"continuity={len(self.continuity)} curvature={len(self.curvature)} "
            f"unvisited={len(self.unvisited)} closure_ok={self.closure_ok}"
        )


def _arc_pieces(path: DubinsPath):
    """Primitive pieces: ('S', a, b) or ('A', center, r, phi0, sweep, ccw)."""
    pose = path.start
    pieces = []
    for kind, param in path.segments:
        if param <= 0.0:
            continue
        if kind == "S":
            nxt = (pose.x + param * math.cos(pose.theta), pose.y + param * math.sin(pose.theta))
            pieces.append(("S", (pose.x, pose.y), nxt))
        else:
            r = path.rho
            if kind == "L":
                center = (pose.x - r * math.sin(pose.theta), pose.y + r * math.cos(pose.theta))
                pieces.append(("A", center, r, pose.theta - math.pi / 2.0, param, True))
            else:
                center = (pose.x + r * math.sin(pose.theta), pose.y - r * math.cos(pose.theta))
                pieces.append(("A", center, r, pose.theta + math.pi / 2.0, param, False))
        pose = step(pose, kind, param, path.rho)
    return pieces


def _point_piece_distance(p, piece) -> float:
    if piece[0] == "S":
        (ax, ay), (bx, by) = piece[1], piece[2]
        vx, vy = bx - ax, by - ay
        norm2 = vx * vx + vy * vy
        if norm2 == 0.0:
            return math.hypot(p[0] - ax, p[1] - ay)
        t = max(0.0, min(1.0, ((p[0] - ax) * vx + (p[1] - ay) * vy) / norm2))
        return math.hypot(p[0] - (ax + t * vx), p[1] - (ay + t * vy))
    _, center, r, phi0, sweep, ccw = piece
    vx, vy = p[0] - center[0], p[1] - center[1]
    phi = math.atan2(vy, vx)
    delta = mod2pi(phi - phi0) if ccw else mod2pi(phi0 - phi)
    if delta <= sweep:
        return abs(math.hypot(vx, vy) - r)
    a1 = phi0 + sweep if ccw else phi0 - sweep
    d0 = math.hypot(p[0] - (center[0] + r * math.cos(phi0)), p[1] - (center[1] + r * math.sin(phi0)))
    d1 = math.hypot(p[0] - (center[0] + r * math.cos(a1)), p[1] - (center[1] + r * math.sin(a1)))
    return min(d0, d1)


def point_to_path_distance(p, path: DubinsPath) -> float:
    """Exact minimum distance from a point to the path's trace."""
    pieces = _arc_pieces(path)
    if not pieces:
        return math.hypot(p[0] - path.start.x, p[1] - path.start.y)
    return min(_point_piece_distance(p, piece) for piece in pieces)


def validate_tour(tour: Tour, targets: TargetSet, rho: float, eps_visit: float = 1e-6) -> TourReport:
    """Report continuity, curvature, closure, and missed-target violations.

    Continuity and closure use a 1e-9 pose tolerance; a curvature violation
    is any flown arc of radius below rho - 1e-9; a target is missed when
    its exact distance to the tour trace exceeds eps_visit.
    """
    report = TourReport()
    segs = tour.segments
    for i in range(1, len(segs)):
        prev_end = end_pose(segs[i - 1])
        cur = segs[i].start
        pos_err = math.hypot(prev_end.x - cur.x, prev_end.y - cur.y)
        head_err = angle_diff(prev_end.theta, cur.theta)
        if pos_err > 1e-9 or head_err > 1e-9:
            report.continuity.append((i, pos_err, head_err))
    for i, s in enumerate(segs):
        has_arc = any(kind in "LR" and p > 0.0 for kind, p in s.segments)
        if has_arc and s.rho < rho - 1e-9:
            report.curvature.append((i, s.rho))
    if tour.closed:
        report.closed_checked = True
        end = tour.end
        report.closure_position_error = math.hypot(end.x - tour.start.x, end.y - tour.start.y)
        report.closure_heading_error = angle_diff(end.theta, tour.start.theta)

    cumulative = [0.0]
    for s in segs:
        cumulative.append(cumulative[-1] + path_length(s))

    for t, p in enumerate(targets.points):
        if not segs:
            dist = math.hypot(p[0] - tour.start.x, p[1] - tour.start.y)
            if dist > eps_visit:
                report.unvisited.append((t, dist))
            continue
        dist = math.inf
        rec = tour.visit_records.get(t)
        if rec is not None:
            i = min(max(bisect.bisect_right(cumulative, rec.position) - 1, 0), len(segs) - 1)
            for j in (i - 1, i, i + 1):
                if 0 <= j < len(segs):
                    dist = min(dist, point_to_path_distance(p, segs[j]))
        if dist > eps_visit:
            for s in segs:
                dist = min(dist, point_to_path_distance(p, s))
                if dist <= eps_visit:
                    break
        if dist > eps_visit:
            report.unvisited.append((t, dist))
    return report
