"""Bead geometry: the curvature-matched tile primitive and its traversal paths.

A bead of half-length ``l`` for turn radius ``rho`` sits between two axis
endpoints 2*l apart.  Two regions matter:

* the *hull* (``contains``): the lens bounded by the two radius-2*rho
  circles through both endpoints.  Every through-path produced by
  ``traversal_path`` stays inside it, and its maximum thickness is
  exactly ``bead_width``.
* the *tile share*: the interlocked variant of the hull that partitions
  the plane under the row lattice (one tile per fundamental domain of
  area ``bead_area``).  The tiling module owns that partition; each tile
  is a subset of its bead's hull, touching it at the endpoints and one
  apex.

``bead_width`` / ``bead_area`` are the closed forms

    w(l) = 4*rho*(1 - sqrt(1 - l^2/(4 rho^2))),      area = l * w(l),

where the area is the tile share, i.e. the measure of plane owned per
bead in the tiling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dubins import TAU, DubinsPath, Pose, mod2pi


def bead_width(l: float, rho: float) -> float:
    """Maximum thickness w(l) of a bead; exact closed form."""
    _check_dims(l, rho)
    x = l / (2.0 * rho)
    return 4.0 * rho * (1.0 - math.sqrt(max(0.0, 1.0 - x * x)))


def bead_area(l: float, rho: float) -> float:
    """Tile-share area l*w(l) (the plane area owned per bead in the tiling)."""
    return l * bead_width(l, rho)


def _check_dims(l: float, rho: float) -> None:
    if not (rho > 0.0 and math.isfinite(rho)):
        raise ValueError("rho must be positive and finite")
    if not (0.0 < l <= 2.0 * rho):
        raise ValueError(f"half-length must satisfy 0 < l <= 2*rho, got l={l} rho={rho}")


def solve_bead_half_length(area_target: float, rho: float) -> float:
    """Invert bead_area: the unique l in (0, 2*rho] with l*w(l) = area_target.

    Bisection on the strictly increasing area map, absolute tolerance 1e-12.
    Rejects targets outside (0, 8*rho^2]; callers treat that as "point count
    too small for a valid tiling".
    """
    if not (rho > 0.0 and math.isfinite(rho)):
        raise ValueError("rho must be positive and finite")
    if not (0.0 < area_target <= 8.0 * rho * rho):
        raise ValueError(f"area target {area_target} outside (0, 8*rho^2]")
    lo, hi = 0.0, 2.0 * rho
    if bead_area(hi, rho) <= area_target:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if mid * bead_width(mid, rho) < area_target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Bead:
    """Axis-aligned-by-default bead; ``orientation`` is the unit axis p- -> p+."""

    center: tuple[float, float]
    half_length: float
    rho: float
    orientation: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self):
        _check_dims(self.half_length, self.rho)
        ux, uy = self.orientation
        norm = math.hypot(ux, uy)
        if not (norm > 0.0 and math.isfinite(norm)):
            raise ValueError("orientation must be a nonzero vector")
        object.__setattr__(self, "orientation", (ux / norm, uy / norm))
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @property
    def width(self) -> float:
        return bead_width(self.half_length, self.rho)

    @property
    def area(self) -> float:
        return bead_area(self.half_length, self.rho)

    @property
    def endpoints(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """(p-, p+): the two axis endpoints."""
        cx, cy = self.center
        ux, uy = self.orientation
        l = self.half_length
        return ((cx - l * ux, cy - l * uy), (cx + l * ux, cy + l * uy))

    def to_local(self, p: tuple[float, float]) -> tuple[float, float]:
        cx, cy = self.center
        ux, uy = self.orientation
        dx, dy = p[0] - cx, p[1] - cy
        return (dx * ux + dy * uy, -dx * uy + dy * ux)

    def to_world(self, p: tuple[float, float]) -> tuple[float, float]:
        cx, cy = self.center
        ux, uy = self.orientation
        return (cx + p[0] * ux - p[1] * uy, cy + p[0] * uy + p[1] * ux)

    def heading_to_world(self, theta: float) -> float:
        ux, uy = self.orientation
        return mod2pi(theta + math.atan2(uy, ux))


def contains(bead: Bead, p: tuple[float, float], tol: float = 0.0) -> bool:
    """Closed-region membership in the bead hull (outward tolerance ``tol``).

    The hull is the intersection of the two disks of radius 2*rho centered,
    in bead-local coordinates, at (0, +-c) with c = sqrt(4 rho^2 - l^2); its
    boundary arcs meet at the endpoints and peak at (0, +-w/2).
    """
    x, y = bead.to_local(p)
    r = 2.0 * bead.rho
    c = math.sqrt(max(0.0, r * r - bead.half_length ** 2))
    limit = (r + tol) * (r + tol)
    return (x * x + (y - c) ** 2 <= limit) and (x * x + (y + c) ** 2 <= limit)


def _pencil_arc(bead: Bead, target_local: tuple[float, float], direction: int):
    """Geometry of the through-arc: (signed center offset k, radius R, turn sign).

    The arc is the circle through both endpoints and the target.  turn sign
    +1 means a left (counterclockwise) sweep when flown in ``direction``.
    """
    tx, ty = target_local
    l = bead.half_length
    k = (tx * tx + ty * ty - l * l) / (2.0 * ty)  # circle center (0, k)
    radius = math.hypot(l, k)
    # ty > 0 puts the center below the chord: clockwise when flying p- -> p+.
    cw_forward = ty > 0.0
    if direction > 0:
        turn = -1 if cw_forward else +1
    else:
        turn = +1 if cw_forward else -1
    return k, radius, turn


def traversal_path(bead: Bead, target: tuple[float, float], direction: int = +1) -> DubinsPath:
    """Bounded-curvature path across the bead through ``target``.

    Travels from one endpoint to the other (``direction`` +1: p- to p+),
    passing exactly through the target, as the single circular arc through
    all three points.  Its radius is at least 2*rho (so curvature is within
    the vehicle bound with margin), it stays inside the bead hull, and its
    length 2*R*asin(l/R) never exceeds 4*rho*asin(l/(2*rho)), with equality
    when the target is an apex.  On-axis targets degenerate to the straight
    chord of length 2*l.
    """
    if direction not in (+1, -1):
        raise ValueError("direction must be +1 or -1")
    if not contains(bead, target, tol=1e-9):
        raise ValueError(f"target {target} lies outside the bead")
    tx, ty = bead.to_local(target)
    l = bead.half_length
    entry_local = (-l, 0.0) if direction > 0 else (l, 0.0)
    if ty == 0.0:
        heading = bead.heading_to_world(0.0 if direction > 0 else math.pi)
        start = Pose(*bead.to_world(entry_local), heading)
        return DubinsPath(start, bead.rho, "LSL", (0.0, 2.0 * l, 0.0))
    k, radius, turn = _pencil_arc(bead, (tx, ty), direction)
    sweep = 2.0 * math.asin(min(1.0, l / radius))
    phi_entry = math.atan2(entry_local[1] - k, entry_local[0])
    heading_local = phi_entry + turn * (math.pi / 2.0)
    start = Pose(*bead.to_world(entry_local), bead.heading_to_world(heading_local))
    word = "LSL" if turn > 0 else "RSR"
    return DubinsPath(start, radius, word, (sweep, 0.0, 0.0))


def traversal_target_offset(bead: Bead, target: tuple[float, float], direction: int = +1) -> float:
    """Arc length from the traversal path's start to its pass through the target."""
    tx, ty = bead.to_local(target)
    l = bead.half_length
    if ty == 0.0:
        return (tx + l) if direction > 0 else (l - tx)
    k, radius, turn = _pencil_arc(bead, (tx, ty), direction)
    entry_local = (-l, 0.0) if direction > 0 else (l, 0.0)
    phi_entry = math.atan2(entry_local[1] - k, entry_local[0])
    phi_target = math.atan2(ty - k, tx)
    swept = mod2pi(turn * (phi_target - phi_entry))
    return radius * swept


def traversal_length_bound(l: float, rho: float) -> float:
    """Upper bound 4*rho*asin(l/(2*rho)) on any traversal path's length."""
    _check_dims(l, rho)
    return 4.0 * rho * math.asin(l / (2.0 * rho))
