"""Plain-text file formats: point lists, tours, sweep tables, sweep configs.

All floats are written with repr (shortest round-trip form), so every
file re-reads to bit-identical values and regeneration is byte-stable.
"""

from __future__ import annotations

import math

from .dubins import DubinsPath, Pose
from .planner import TargetSet, Tour, VisitRecord
from .experiments import SweepConfig, TrialResult
from .planner import PhaseStats


class FormatError(ValueError):
    """Malformed input file; message carries the offending line or key."""


def _fmt(x: float) -> str:
    return repr(float(x))


# --- points ----------------------------------------------------------------


def write_points(targets: TargetSet) -> str:
    lines = ["x,y"]
    lines += [f"{_fmt(x)},{_fmt(y)}" for x, y in targets.points]
    return "\n".join(lines) + "\n"


def read_points(text: str) -> TargetSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "x,y":
        raise FormatError("line 1: expected header 'x,y'")
    pts = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != 2:
            raise FormatError(f"line {i}: expected 'x,y' pair, got {ln!r}")
        try:
            pts.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise FormatError(f"line {i}: {exc}") from exc
    return TargetSet(tuple(pts))


# --- tours -------------------------------------------------------------------


def write_tour(tour: Tour, stats: PhaseStats | None = None) -> str:
    """Serialize a tour: summary block, segment list, visit records."""
    out = ["# beadtsp tour v1", "[summary]"]
    out.append(f"total_length = {_fmt(tour.total_length)}")
    out.append(f"closed = {int(tour.closed)}")
    out.append(f"segment_count = {len(tour.segments)}")
    out.append(
        "start = "
        + ",".join(_fmt(v) for v in (tour.start.x, tour.start.y, tour.start.theta))
    )
    if stats is not None:
        out.append(f"leftover = {stats.leftover_after_all_phases}")
        out.append(f"fallback_length = {_fmt(stats.fallback_length)}")
        out.append(f"closure_length = {_fmt(stats.closure_length)}")
        for i, (ln, v, m, served) in enumerate(
            zip(stats.phase_lengths, stats.v, stats.m, stats.targets_served), start=1
        ):
            out.append(f"phase_{i} = {_fmt(ln)},{v},{m},{served}")
    out.append("[segments]")
    out.append("# word,start_x,start_y,start_theta,rho,p1,p2,p3")
    for s in tour.segments:
        fields = [s.word] + [_fmt(v) for v in (s.start.x, s.start.y, s.start.theta, s.rho, *s.params)]
        out.append(",".join(fields))
    out.append("[visits]")
    out.append("# target_index,phase,arc_position")
    for t in sorted(tour.visit_records):
        rec = tour.visit_records[t]
        out.append(f"{t},{rec.phase},{_fmt(rec.position)}")
    return "\n".join(out) + "\n"


def read_tour(text: str) -> tuple[Tour, dict]:
    """Parse a tour file; returns (tour, summary key/value dict)."""
    section = None
    summary: dict[str, str] = {}
    segments: list[DubinsPath] = []
    records: dict[int, VisitRecord] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            section = line
            continue
        try:
            if section == "[summary]":
                key, _, value = line.partition("=")
                summary[key.strip()] = value.strip()
            elif section == "[segments]":
                parts = line.split(",")
                if len(parts) != 8:
                    raise FormatError(f"line {lineno}: expected 8 segment fields")
                word = parts[0]
                x, y, th, rho, p1, p2, p3 = (float(v) for v in parts[1:])
                segments.append(DubinsPath(Pose(x, y, th), rho, word, (p1, p2, p3)))
            elif section == "[visits]":
                parts = line.split(",")
                if len(parts) != 3:
                    raise FormatError(f"line {lineno}: expected 3 visit fields")
                records[int(parts[0])] = VisitRecord(int(parts[1]), float(parts[2]))
            else:
                raise FormatError(f"line {lineno}: content outside any section")
        except FormatError:
            raise
        except Exception as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    if "start" not in summary:
        raise FormatError("summary missing 'start'")
    sx, sy, sth = (float(v) for v in summary["start"].split(","))
    closed = bool(int(summary.get("closed", "1")))
    tour = Tour(Pose(sx, sy, sth), tuple(segments), records, closed)
    return tour, summary


# --- sweep config ------------------------------------------------------------

_CONFIG_KEYS = {"n_values", "trials", "width", "height", "rho", "seed", "fallback"}
_REQUIRED_KEYS = {"n_values", "trials"}


def read_sweep_config(text: str) -> SweepConfig:
    """Flat key = value lines; unknown keys rejected, missing ones named."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key = value', got {line!r}")
        if key not in _CONFIG_KEYS:
            raise FormatError(f"line {lineno}: unknown key {key!r}")
        values[key] = value.strip()
    missing = _REQUIRED_KEYS - values.keys()
    if missing:
        raise FormatError(f"missing required key(s): {', '.join(sorted(missing))}")
    try:
        n_values = tuple(int(v) for v in values["n_values"].split(",") if v.strip())
        return SweepConfig(
            n_values=n_values,
            trials=int(values["trials"]),
            width=float(values.get("width", "1.0")),
            height=float(values.get("height", "1.0")),
            rho=float(values.get("rho", "0.05")),
            base_seed=int(values.get("seed", "0")),
            fallback=values.get("fallback", "alternating"),
        )
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(str(exc)) from exc


def write_sweep_config(config: SweepConfig) -> str:
    return (
        f"n_values = {','.join(str(n) for n in config.n_values)}\n"
        f"trials = {config.trials}\n"
        f"width = {_fmt(config.width)}\n"
        f"height = {_fmt(config.height)}\n"
        f"rho = {_fmt(config.rho)}\n"
        f"seed = {config.base_seed}\n"
        f"fallback = {config.fallback}\n"
    )


# --- sweep result tables ------------------------------------------------------


def write_sweep_table(results: list[TrialResult]) -> str:
    max_phases = max((len(r.phase_stats.phase_lengths) for r in results), default=0)
    header = ["n", "trial", "seed", "total_length", "leftover", "fallback_length", "runtime"]
    header += [f"phase_{i}" for i in range(1, max_phases + 1)]
    lines = ["\t".join(header)]
    by_n_counter: dict[int, int] = {}
    for r in results:
        trial = by_n_counter.get(r.n, 0)
        by_n_counter[r.n] = trial + 1
        row = [
            str(r.n),
            str(trial),
            str(r.seed),
            _fmt(r.total_length),
            str(r.leftover_count),
            _fmt(r.fallback_length),
            _fmt(r.runtime),
        ]
        phases = list(r.phase_stats.phase_lengths) + [math.nan] * (max_phases - len(r.phase_stats.phase_lengths))
        row += [_fmt(v) for v in phases]
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def read_sweep_table(text: str) -> list[dict]:
    """Rows as dicts with numeric fields parsed; phase columns -> 'phases' list."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty results table")
    header = lines[0].split("\t")
    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split("\t")
        if len(parts) != len(header):
            raise FormatError(f"line {lineno}: expected {len(header)} columns, got {len(parts)}")
        rec = dict(zip(header, parts))
        try:
            row = {
                "n": int(rec["n"]),
                "trial": int(rec["trial"]),
                "seed": int(rec["seed"]),
                "total_length": float(rec["total_length"]),
                "leftover": int(rec["leftover"]),
                "fallback_length": float(rec["fallback_length"]),
                "runtime": float(rec["runtime"]),
                "phases": [
                    float(rec[k]) for k in header if k.startswith("phase_") and rec[k] != "nan"
                ],
            }
        except (KeyError, ValueError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
        rows.append(row)
    return rows
