"""Bounded-curvature TSP planning via recursive bead tiling."""

from .dubins import (
    DubinsPath,
    Pose,
    end_pose,
    mod2pi,
    path_length,
    sample_path,
    shortest_path,
    word_length,
)
from .bead import (
    Bead,
    bead_area,
    bead_width,
    contains,
    solve_bead_half_length,
    traversal_length_bound,
    traversal_path,
)
from .tiling import (
    BeadGrid,
    BeadId,
    Environment,
    MetaBeadId,
    TilingError,
    build_tiling,
    locate,
    meta_bead_entry_exit,
    meta_bead_of,
    occupancy_histogram,
    row_sweep_order,
)
from .planner import (
    PhaseStats,
    TargetSet,
    Tour,
    alternating_algorithm,
    greedy_fallback,
    recursive_bead_tiling,
    validate_tour,
)
from .bounds import (
    BoundInputs,
    beads_per_pass,
    beta,
    closure_bound,
    istar,
    num_passes_bound,
    pass_length_bound,
    phase_length_bound,
    total_length_bound,
    uturn_bound,
)
from .experiments import (
    SweepConfig,
    TrialResult,
    fit_exponent,
    generate_points,
    leftover_curve,
    phase_occupancy_report,
    run_trial,
    sweep,
)
from .svg import render_svg

__version__ = "0.1.0"
