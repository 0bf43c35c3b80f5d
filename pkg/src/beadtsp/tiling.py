"""Periodic bead tiling of a rectangle: point location, meta-beads, sweeps.

Rows of beads run parallel to the environment's width at vertical pitch
w/2, consecutive rows offset horizontally by l, beads within a row at
period 2l.  One tile per lattice fundamental domain (area 2l * w/2 =
l*w) partitions the plane exactly.

Each tile is bounded by three radius-2*rho arcs: the upper arc of the
lens circle through its two endpoints, and the lower arcs of the two
circles that are the *upper* circles of its two row-below neighbors.
Adjacent tiles therefore meet along shared arcs of shared circles, which
is what makes half-open membership exact down to float level: the same
squared-distance expression decides both sides of every shared arc.
A tile is a subset of its bead's hull (see the bead module), so the
bead returned for any located point always contains that point.

Row 0's axis lies on the top edge of the environment and beads may
protrude outside; indices carry a one-bead margin on every side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from collections import Counter

from .bead import Bead, bead_area, bead_width, solve_bead_half_length
from .dubins import Pose, mod2pi


class TilingError(ValueError):
    """Raised when the requested point count cannot produce a valid tiling."""


@dataclass(frozen=True)
class Environment:
    """Axis-aligned rectangle of the given width and height."""

    width: float
    height: float

    def __post_init__(self):
        if not (self.width > 0.0 and self.height > 0.0):
            raise ValueError("environment sides must be positive")
        if not (math.isfinite(self.width) and math.isfinite(self.height)):
            raise ValueError("environment sides must be finite")

    def contains(self, p: tuple[float, float]) -> bool:
        return 0.0 <= p[0] <= self.width and 0.0 <= p[1] <= self.height

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass(frozen=True, order=True)
class BeadId:
    row: int
    col: int


@dataclass(frozen=True, order=True)
class MetaBeadId:
    phase: int
    row: int
    col: int


def _rows_per_meta(phase: int) -> int:
    return 1 << ((phase - 1) // 2)


def _cols_per_meta(phase: int) -> int:
    return 1 << (phase - 1 - (phase - 1) // 2)


class BeadGrid:
    """Immutable bead lattice sized so that bead_area(l) = W*H/(2n)."""

    def __init__(self, env: Environment, n: int, rho: float):
        if n < 1:
            raise ValueError("n must be at least 1")
        if not (rho > 0.0 and math.isfinite(rho)):
            raise ValueError("rho must be positive and finite")
        area = env.area / (2.0 * n)
        if area > 8.0 * rho * rho:
            raise TilingError(
                f"n={n} too small: bead area {area:.6g} exceeds the 8*rho^2 "
                f"limit {8 * rho * rho:.6g}; no half-length below 2*rho fits"
            )
        self.env = env
        self.n = n
        self.rho = rho
        self.l = solve_bead_half_length(area, rho)
        self.w = bead_width(self.l, rho)
        self.mu = bead_area(self.l, rho) / env.area
        hw = 0.5 * self.w
        r = 0
        while env.height - r * hw + hw > 0.0:
            r += 1
        self.row_count = r
        self.col_min = -1
        self.col_max = int(math.floor(env.width / (2.0 * self.l))) + 1
        self.col_count = self.col_max - self.col_min + 1

    # --- lattice geometry, kept canonical for float-exact shared arcs ----

    def axis_y(self, row: int) -> float:
        return self.env.height - row * (0.5 * self.w)

    def _center_units(self, row: int, col: int) -> int:
        return 2 * col + 1 + (row & 1)

    def center(self, bid: BeadId) -> tuple[float, float]:
        return (self._center_units(bid.row, bid.col) * self.l, self.axis_y(bid.row))

    def _circle_y(self, m: int) -> float:
        return self.env.height - m * (0.5 * self.w) - 2.0 * self.rho

    def bead(self, bid: BeadId) -> Bead:
        return Bead(self.center(bid), self.l, self.rho)

    def cell_contains(self, bid: BeadId, p: tuple[float, float]) -> bool:
        """Half-open tile membership; exactly one tile owns any point.

        Owns its upper arc (points on it included), cedes its lower arcs
        to the row below, and excludes the vertical tip lines.
        """
        px, py = p
        cu = self._center_units(bid.row, bid.col)
        cx = cu * self.l
        if not (-self.l < px - cx < self.l):
            return False
        r2 = 4.0 * self.rho * self.rho
        up_y = self._circle_y(bid.row - 1)
        if (px - cx) ** 2 + (py - up_y) ** 2 > r2:
            return False
        lo_y = self._circle_y(bid.row)
        for ku in (cu - 1, cu + 1):
            if (px - ku * self.l) ** 2 + (py - lo_y) ** 2 <= r2:
                return False
        return True

    # --- queries ---------------------------------------------------------

    def locate(self, p: tuple[float, float]) -> BeadId:
        """The unique bead whose tile owns p; p must lie in the environment."""
        if not self.env.contains(p):
            raise ValueError(f"point {p} outside the environment")
        px, py = p
        hw = 0.5 * self.w
        r0 = int(math.floor((self.env.height - py) / hw))
        for row in range(max(0, r0 - 2), min(self.row_count, r0 + 3)):
            par = row & 1
            c0 = int(math.floor((px / self.l - 1.0 - par) / 2.0))
            for col in range(c0 - 1, c0 + 2):
                bid = BeadId(row, col)
                if self.cell_contains(bid, p):
                    return bid
        raise RuntimeError(f"tiling failed to claim point {p}")  # unreachable

    def bbox(self, bid: BeadId) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax); the tile touches all four edges."""
        cx, cy = self.center(bid)
        hw = 0.5 * self.w
        return (cx - self.l, cy - hw, cx + self.l, cy + hw)

    def fully_inside(self, bid: BeadId) -> bool:
        x0, y0, x1, y1 = self.bbox(bid)
        return x0 >= 0.0 and y0 >= 0.0 and x1 <= self.env.width and y1 <= self.env.height

    def intersects_env(self, bid: BeadId) -> bool:
        x0, y0, x1, y1 = self.bbox(bid)
        return x0 < self.env.width and x1 > 0.0 and y0 < self.env.height and y1 > 0.0

    def bead_ids(self):
        for row in range(self.row_count):
            for col in range(self.col_min, self.col_max + 1):
                yield BeadId(row, col)

    def meta_bead_of(self, bid: BeadId, phase: int) -> MetaBeadId:
        if phase < 1:
            raise ValueError("phase must be >= 1")
        rp = _rows_per_meta(phase)
        cp = _cols_per_meta(phase)
        return MetaBeadId(phase, bid.row // rp, bid.col // cp)

    def meta_row_count(self, phase: int) -> int:
        return (self.row_count - 1) // _rows_per_meta(phase) + 1

    def meta_col_range(self, phase: int) -> tuple[int, int]:
        cp = _cols_per_meta(phase)
        return (self.col_min // cp, self.col_max // cp)

    def meta_col_count(self, phase: int) -> int:
        lo, hi = self.meta_col_range(phase)
        return hi - lo + 1

    def meta_count(self, phase: int) -> int:
        """Meta-beads at this phase covering the lattice (margin ring included)."""
        return self.meta_row_count(phase) * self.meta_col_count(phase)

    def row_sweep_order(self, phase: int) -> list[MetaBeadId]:
        """Boustrophedon order: meta-rows top-down, alternating column direction."""
        lo, hi = self.meta_col_range(phase)
        order = []
        for i, mrow in enumerate(range(self.meta_row_count(phase))):
            cols = range(lo, hi + 1) if i % 2 == 0 else range(hi, lo - 1, -1)
            order.extend(MetaBeadId(phase, mrow, c) for c in cols)
        return order

    def meta_bead_entry_exit(self, mid: MetaBeadId, direction: int = +1) -> tuple[Pose, Pose]:
        """Sweep entry/exit poses on the meta-bead's mid-height axis."""
        if direction not in (+1, -1):
            raise ValueError("direction must be +1 or -1")
        rp = _rows_per_meta(mid.phase)
        cp = _cols_per_meta(mid.phase)
        r_first = mid.row * rp
        r_last = r_first + rp - 1
        c_first = mid.col * cp
        c_last = c_first + cp - 1
        y_mid = 0.5 * (self.axis_y(r_first) + self.axis_y(r_last))
        parities = {0, 1} if rp >= 2 else {r_first & 1}
        x_left = (2 * c_first + min(parities)) * self.l
        x_right = (2 * c_last + 2 + max(parities)) * self.l
        if direction > 0:
            return Pose(x_left, y_mid, 0.0), Pose(x_right, y_mid, 0.0)
        return Pose(x_right, y_mid, math.pi), Pose(x_left, y_mid, math.pi)


def build_tiling(env: Environment, n: int, rho: float) -> BeadGrid:
    """Grid sized so each bead owns W*H/(2n) of the environment (mu = 1/(2n))."""
    return BeadGrid(env, n, rho)


def locate(grid: BeadGrid, p: tuple[float, float]) -> BeadId:
    return grid.locate(p)


def meta_bead_of(grid: BeadGrid, bid: BeadId, phase: int) -> MetaBeadId:
    return grid.meta_bead_of(bid, phase)


def row_sweep_order(grid: BeadGrid, phase: int) -> list[MetaBeadId]:
    return grid.row_sweep_order(phase)


def meta_bead_entry_exit(grid: BeadGrid, mid: MetaBeadId, direction: int = +1):
    return grid.meta_bead_entry_exit(mid, direction)


def occupancy_histogram(grid: BeadGrid, points) -> dict[int, int]:
    """Histogram {k: number of fully-interior beads holding exactly k points}."""
    per_bead = Counter()
    for p in points:
        per_bead[grid.locate(p)] += 1
    hist = Counter()
    for bid in grid.bead_ids():
        if grid.fully_inside(bid):
            hist[per_bead.get(bid, 0)] += 1
    return dict(sorted(hist.items()))
