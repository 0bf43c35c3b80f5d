"""Command-line surface: gen, tour, sweep, fit, bounds, render.

Exit codes: 0 success, 1 usage error, 2 runtime/validation error.
"""

from __future__ import annotations

import argparse
import sys

from . import fileio
from .bounds import bound_table, total_length_bound
from .experiments import fit_exponent, generate_points, sweep
from .planner import recursive_bead_tiling, validate_tour
from .svg import render_svg
from .tiling import Environment, TilingError, build_tiling


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise RuntimeError(f"cannot read {path}: {exc}") from exc


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise RuntimeError(f"cannot write {path}: {exc}") from exc


def _build_parser() -> _Parser:
    p = _Parser(prog="beadtsp", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common_env(sp):
        sp.add_argument("--width", type=float, default=1.0)
        sp.add_argument("--height", type=float, default=1.0)

    g = sub.add_parser("gen", help="generate a uniform target set")
    g.add_argument("--n", type=int, required=True)
    common_env(g)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    t = sub.add_parser("tour", help="plan a tour over a point file")
    t.add_argument("--points", required=True)
    common_env(t)
    t.add_argument("--rho", type=float, default=0.05)
    t.add_argument("--fallback", choices=("alternating", "greedy"), default="alternating")
    t.add_argument("--out", required=True)
    t.add_argument("--svg", default=None)

    s = sub.add_parser("sweep", help="run a seeded sweep from a config file")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)

    f = sub.add_parser("fit", help="fit the scaling exponent of a sweep table")
    f.add_argument("--results", required=True)
    f.add_argument("--slope-min", type=float, default=0.55)
    f.add_argument("--slope-max", type=float, default=0.80)

    b = sub.add_parser("bounds", help="print analytic per-phase length bounds")
    b.add_argument("--n", type=int, required=True)
    common_env(b)
    b.add_argument("--rho", type=float, default=0.05)

    r = sub.add_parser("render", help="render points (and optionally a tour) to SVG")
    r.add_argument("--points", required=True)
    common_env(r)
    r.add_argument("--tour", default=None)
    r.add_argument("--grid", action="store_true", help="draw the bead tiling outlines")
    r.add_argument("--rho", type=float, default=0.05)
    r.add_argument("--out", required=True)
    return p


def _cmd_gen(args) -> int:
    env = Environment(args.width, args.height)
    targets = generate_points(args.n, env, args.seed)
    _write(args.out, fileio.write_points(targets))
    print(f"wrote {len(targets)} points to {args.out}")
    return 0


def _cmd_tour(args) -> int:
    env = Environment(args.width, args.height)
    targets = fileio.read_points(_read(args.points))
    for pt in targets.points:
        if not env.contains(pt):
            raise RuntimeError(f"point {pt} outside the {env.width} x {env.height} environment")
    tour, stats = recursive_bead_tiling(targets, env, args.rho, args.fallback)
    report = validate_tour(tour, targets, args.rho)
    if not report.ok:
        raise RuntimeError(f"planned tour failed validation: {report.summary()}")
    _write(args.out, fileio.write_tour(tour, stats))
    print(
        f"tour: n={len(targets)} length={tour.total_length:.6f} "
        f"phases={len(stats.phase_lengths)} leftover={stats.leftover_after_all_phases}"
    )
    if args.svg:
        grid = None
        try:
            grid = build_tiling(env, len(targets), args.rho)
        except TilingError:
            pass
        _write(args.svg, render_svg(env, targets, tour, grid))
        print(f"wrote {args.svg}")
    return 0


def _cmd_sweep(args) -> int:
    config = fileio.read_sweep_config(_read(args.config))
    results = sweep(config)
    _write(args.out, fileio.write_sweep_table(results))
    print(f"wrote {len(results)} trial rows to {args.out}")
    return 0


def _cmd_fit(args) -> int:
    rows = fileio.read_sweep_table(_read(args.results))

    class _Row:
        def __init__(self, n, total_length):
            self.n = n
            self.total_length = total_length

    slope, intercept, resid = fit_exponent([_Row(r["n"], r["total_length"]) for r in rows])
    verdict = "PASS" if args.slope_min <= slope <= args.slope_max else "FAIL"
    print(f"slope = {slope:.6f}")
    print(f"intercept = {intercept:.6f}")
    print(f"residual_rms = {resid:.6f}")
    print(f"window = [{args.slope_min}, {args.slope_max}] -> {verdict}")
    return 0


def _cmd_bounds(args) -> int:
    env = Environment(args.width, args.height)
    grid = build_tiling(env, args.n, args.rho)
    print(f"l_n = {grid.l:.9g}")
    rows = bound_table(args.width, args.height, args.rho, args.n, grid.l)
    header = f"{'j':>3} {'phase':>5} {'beads/pass':>10} {'pass_len':>12} {'uturn':>12} {'passes':>8} {'closure':>10} {'bound':>14}"
    print(header)
    for r in rows:
        print(
            f"{r['j']:>3} {r['phase']:>5} {r['beads_per_pass']:>10} {r['pass_length']:>12.6f} "
            f"{r['uturn']:>12.6f} {r['passes_exact']:>8} {r['closure']:>10.4f} {r['phase_bound']:>14.4f}"
        )
    total = total_length_bound(args.width, args.height, args.rho, args.n, grid.l)
    print(f"total_odd_phase_bound_x3 = {total:.4f}")
    return 0


def _cmd_render(args) -> int:
    env = Environment(args.width, args.height)
    targets = fileio.read_points(_read(args.points))
    tour = None
    if args.tour:
        tour, _ = fileio.read_tour(_read(args.tour))
    grid = None
    if args.grid:
        grid = build_tiling(env, len(targets), args.rho)
    _write(args.out, render_svg(env, targets, tour, grid))
    print(f"wrote {args.out}")
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "tour": _cmd_tour,
    "sweep": _cmd_sweep,
    "fit": _cmd_fit,
    "bounds": _cmd_bounds,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (RuntimeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
