"""Analytic length/count calculators for the phased sweep.

Everything here is a closed-form function of the environment, the turn
radius, the point count, and the bead half-length; the experiment harness
compares measured tours against these values.  Odd phases are indexed by
j (phase = 2j - 1).  Asymptotic remainder terms are dropped; comparisons
against measurements apply a declared multiplicative slack (default 1.25).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bead import bead_width

DEFAULT_SLACK = 1.25


def beta(i: int) -> Fraction:
    """Exact occupancy-bound coefficient 2**(1-i) for phase i."""
    if i < 1:
        raise ValueError("phase index must be >= 1")
    return Fraction(1, 2 ** (i - 1))


def istar(n: int) -> int:
    """floor(log2 n - log2 log2 n - log2 6): last phase the beta bound tracks."""
    if n < 2:
        raise ValueError("n must be >= 2")
    x = math.log2(n) - math.log2(math.log2(n)) - math.log2(6.0)
    return int(math.floor(x))


@dataclass(frozen=True)
class BoundInputs:
    """Inputs for one odd phase 2j-1 of a sized tiling."""

    width: float
    height: float
    rho: float
    n: int
    l_n: float
    j: int

    def __post_init__(self):
        if min(self.width, self.height, self.rho, self.l_n) <= 0.0 or self.n < 1 or self.j < 1:
            raise ValueError("bound inputs must be positive")

    @property
    def c1(self) -> float:
        """w-direction bead count constant W / (rho*W*H)**(1/3)."""
        return self.width / (self.rho * self.width * self.height) ** (1.0 / 3.0)


def beads_per_pass(inputs: BoundInputs) -> int:
    """ceil(W / (2^j l_n)): meta-beads traversed in one pass at phase 2j-1."""
    return math.ceil(inputs.width / (2 ** inputs.j * inputs.l_n))


def pass_length_bound(inputs: BoundInputs) -> float:
    """Leading-order bound on one pass: 2^(j-1) * 2 l_n * (c1/2^j * n^(1/3) + 1)."""
    per_meta = 2 ** (inputs.j - 1) * 2.0 * inputs.l_n
    count = (inputs.c1 / 2 ** inputs.j) * inputs.n ** (1.0 / 3.0) + 1.0
    return per_meta * count


def uturn_bound(inputs: BoundInputs) -> float:
    """Row-change cost bound 7*pi*rho/3 + 2^(j-2) w(l_n)."""
    return 7.0 * math.pi * inputs.rho / 3.0 + 2.0 ** (inputs.j - 2) * bead_width(inputs.l_n, inputs.rho)


def num_passes_bound(inputs: BoundInputs) -> tuple[int, float]:
    """(exact ceiling H / (2^(j-2) w(l_n)), relaxed rho*H/(2^(j-3) l_n^2) + 1)."""
    w = bead_width(inputs.l_n, inputs.rho)
    exact = math.ceil(inputs.height / (2.0 ** (inputs.j - 2) * w))
    relaxed = inputs.rho * inputs.height / (2.0 ** (inputs.j - 3) * inputs.l_n ** 2) + 1.0
    return exact, relaxed


def closure_bound(width: float, height: float, rho: float) -> float:
    """Constant tour-closure allowance 4*(W + H*pi*rho), as printed."""
    return 4.0 * (width + height * math.pi * rho)


def phase_length_bound(inputs: BoundInputs) -> float:
    """Composition N_pass * (L_pass + L_uturn) + L_closure for phase 2j-1.

    Uses the relaxed pass count (the printed right-hand side), which
    dominates the exact ceiling for every valid input.
    """
    _, n_pass = num_passes_bound(inputs)
    return n_pass * (pass_length_bound(inputs) + uturn_bound(inputs)) + closure_bound(
        inputs.width, inputs.height, inputs.rho
    )


def odd_phase_js(n: int) -> range:
    """j values covering all phases: phase 2j-1 up to floor(log2 n) + 1."""
    num_phases = int(math.floor(math.log2(n))) + 1 if n > 1 else 1
    return range(1, (num_phases + 1) // 2 + 1)


def total_length_bound(width: float, height: float, rho: float, n: int, l_n: float) -> float:
    """3 * sum over odd phases of the per-phase bound."""
    total = 0.0
    for j in odd_phase_js(n):
        total += phase_length_bound(BoundInputs(width, height, rho, n, l_n, j))
    return 3.0 * total


def bound_table(width: float, height: float, rho: float, n: int, l_n: float) -> list[dict]:
    """Per-odd-phase breakdown of every calculator, for reporting."""
    rows = []
    for j in odd_phase_js(n):
        inputs = BoundInputs(width, height, rho, n, l_n, j)
        exact_passes, relaxed_passes = num_passes_bound(inputs)
        rows.append(
            {
                "j": j,
                "phase": 2 * j - 1,
                "beads_per_pass": beads_per_pass(inputs),
                "pass_length": pass_length_bound(inputs),
                "uturn": uturn_bound(inputs),
                "passes_exact": exact_passes,
                "passes_relaxed": relaxed_passes,
                "closure": closure_bound(width, height, rho),
                "phase_bound": phase_length_bound(inputs),
            }
        )
    return rows
