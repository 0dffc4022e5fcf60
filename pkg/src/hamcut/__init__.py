"""hamcut: hamburger cuts and rainbow-simplex partitions of colored point sets."""

from .balance import Tally, halfspace_tally, is_balanced
from .cuts import (
    Candidate,
    CutNotFound,
    CutResult,
    UnrealizableAssignment,
    enumerate_candidates,
    hamburger_cut,
    realize_strict_separator,
    valid_bipartitions,
)
from .generate import default_sizes, random_instance, random_sizes
from .geometry import (
    ColoredInstance,
    GeneralPositionReport,
    Hyperplane,
    Point,
    affinely_independent,
    as_point,
    hyperplane_through,
    orientation,
    validate_general_position,
)
from .measures import (
    BallMixture,
    ConvergenceFailure,
    GridDensity,
    HamburgerSolution,
    MeasureModel,
    TargetSpec,
    eval_f,
    in_truncated_target,
    solve_hamburger,
    target_spec,
    verify_measure_cut,
)
from .oracle import brute_force_cuts, monte_carlo_halfspace_mass, simplices_disjoint_exact
from .partition import (
    MergedClasses,
    PartitionResult,
    RainbowSimplex,
    merge_color_classes_2d,
    rainbow_partition,
    verify_partition,
)

__version__ = "0.1.0"
