"""Seeded instance generation, trial execution, sweeps, and scaling fits.

Randomness comes from a self-contained splitmix64 generator so every
number in the harness is reproducible across machines from (n, seed)
alone.  Per-trial seeds are derived as base_seed XOR mix(n, trial).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .bounds import beta, istar
from .planner import PhaseStats, TargetSet, Tour, recursive_bead_tiling, validate_tour
from .tiling import Environment

_MASK = (1 << 64) - 1


def _mix(z: int) -> int:
    """splitmix64 finalizer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Tiny deterministic PRNG: 64-bit state, golden-ratio increments."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        return _mix(self.state)

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def trial_seed(base_seed: int, n: int, trial: int) -> int:
    """base_seed XOR a stable hash of (n, trial index)."""
    return (base_seed ^ _mix((n << 20) ^ _mix(trial + 1))) & _MASK


def generate_points(n: int, env: Environment, seed: int) -> TargetSet:
    """n independent uniform points in the environment rectangle."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = SplitMix64(seed)
    pts = tuple((rng.uniform() * env.width, rng.uniform() * env.height) for _ in range(n))
    return TargetSet(pts)


@dataclass(frozen=True)
class TrialResult:
    n: int
    seed: int
    total_length: float
    phase_stats: PhaseStats
    leftover_count: int
    fallback_length: float
    runtime: float

    @property
    def closure_length(self) -> float:
        return self.phase_stats.closure_length


@dataclass(frozen=True)
class SweepConfig:
    n_values: tuple[int, ...]
    trials: int
    width: float = 1.0
    height: float = 1.0
    rho: float = 0.05
    base_seed: int = 0
    fallback: str = "alternating"

    def __post_init__(self):
        if any(n < 1 for n in self.n_values):
            raise ValueError("all n values must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


class SweepError(RuntimeError):
    """Aggregated per-trial failures, each tagged with its (n, seed)."""

    def __init__(self, failures):
        self.failures = failures
        lines = ", ".join(f"(n={n}, seed={s}): {e}" for n, s, e in failures)
        super().__init__(f"{len(failures)} trial(s) failed: {lines}")


def run_trial(n: int, env: Environment, rho: float, seed: int, fallback: str = "alternating") -> TrialResult:
    """Plan one seeded instance, validate the tour, and record statistics."""
    targets = generate_points(n, env, seed)
    t0 = time.perf_counter()
    tour, stats = recursive_bead_tiling(targets, env, rho, fallback)
    runtime = time.perf_counter() - t0
    report = validate_tour(tour, targets, rho, eps_visit=1e-6)
    if not report.ok:
        raise RuntimeError(f"tour validation failed for n={n} seed={seed}: {report.summary()}")
    return TrialResult(
        n=n,
        seed=seed,
        total_length=tour.total_length,
        phase_stats=stats,
        leftover_count=stats.leftover_after_all_phases,
        fallback_length=stats.fallback_length,
        runtime=runtime,
    )


def run_trial_with_tour(n, env, rho, seed, fallback="alternating") -> tuple[TrialResult, Tour, TargetSet]:
    """run_trial, also returning the tour and targets (for rendering/tests)."""
    targets = generate_points(n, env, seed)
    t0 = time.perf_counter()
    tour, stats = recursive_bead_tiling(targets, env, rho, fallback)
    runtime = time.perf_counter() - t0
    report = validate_tour(tour, targets, rho, eps_visit=1e-6)
    if not report.ok:
        raise RuntimeError(f"tour validation failed for n={n} seed={seed}: {report.summary()}")
    result = TrialResult(n, seed, tour.total_length, stats, stats.leftover_after_all_phases,
                         stats.fallback_length, runtime)
    return result, tour, targets


def sweep(config: SweepConfig) -> list[TrialResult]:
    """One TrialResult per (n, trial); order-independent per-trial seeding."""
    env = Environment(config.width, config.height)
    results = []
    failures = []
    for n in config.n_values:
        for trial in range(config.trials):
            seed = trial_seed(config.base_seed, n, trial)
            try:
                results.append(run_trial(n, env, config.rho, seed, config.fallback))
            except Exception as exc:  # aggregate, then fail loudly
                failures.append((n, seed, exc))
    if failures:
        raise SweepError(failures)
    return results


def fit_exponent(results) -> tuple[float, float, float]:
    """Least-squares slope of log(mean length per n) against log n.

    Returns (slope, intercept, rms residual).  Means are taken per n first
    to damp the per-trial spread.
    """
    by_n: dict[int, list[float]] = {}
    for r in results:
        by_n.setdefault(r.n, []).append(r.total_length)
    if len(by_n) < 2:
        raise ValueError("need at least 2 distinct n values to fit an exponent")
    ns = sorted(by_n)
    xs = np.log([float(n) for n in ns])
    ys = np.log([float(np.mean(by_n[n])) for n in ns])
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    rms = float(np.sqrt(np.mean(resid**2)))
    return float(slope), float(intercept), rms


def leftover_curve(results) -> dict[int, tuple[float, int]]:
    """Per-n (mean leftover, max leftover)."""
    by_n: dict[int, list[int]] = {}
    for r in results:
        by_n.setdefault(r.n, []).append(r.leftover_count)
    return {n: (float(np.mean(v)), int(max(v))) for n, v in sorted(by_n.items())}


def phase_occupancy_report(results) -> dict[int, float]:
    """Per-n fraction of trials with v_i <= beta(i) * n for all i <= istar(n)."""
    by_n: dict[int, list[bool]] = {}
    for r in results:
        n = r.n
        limit = min(istar(n), len(r.phase_stats.v)) if n >= 2 else 0
        ok = all(r.phase_stats.v[i - 1] <= float(beta(i)) * n for i in range(1, limit + 1))
        by_n.setdefault(n, []).append(ok)
    return {n: sum(v) / len(v) for n, v in sorted(by_n.items())}
