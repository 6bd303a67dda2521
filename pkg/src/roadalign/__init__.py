"""Earthwork-optimal road vertical alignment.

Minimizes ``alpha * A(x) + beta * |S(x)|`` -- cut-and-fill area plus
final cut-and-fill imbalance between a design spline and the ground
profile -- subject to interpolation, slope, and curvature constraints,
using product-space Douglas-Rachford splitting built from closed-form
proximity operators, with cyclic intrepid projections (CycIP) as the
feasibility baseline.
"""

from .planar_norms import (
    DUAL_NORMS,
    NORMS,
    dual_hexagonal_norm,
    dual_l1_norm,
    dual_stadium_norm,
    hexagonal_norm,
    l1_norm,
    stadium_gradient,
    stadium_norm,
)
from .projectors import (
    DUAL_BALL_PROJECTORS,
    project_dual_hexagon_ball,
    project_dual_l1_ball,
    project_dual_stadium_ball,
    project_interval,
    project_segment,
    project_slab,
)
from .prox_core import ProxTerm, moreau_complement, prox_table
from .spline_area import (
    AreaWeights,
    prox_abs_signed_area,
    prox_area_l1,
    prox_area_parity,
    segment_area,
    signed_total_area,
    spline_eval,
    total_area,
    weights,
)
from .problem import AlignmentProblem
from .constraints import (
    ConstraintSet,
    build_six_sets,
    feasibility_residual,
    intrepid_project,
    project_set,
)
from .solvers import (
    SolverConfig,
    SolverReport,
    cycip_solve,
    dr_solve,
    saving_ratio,
)
from .harness import (
    brute_force_prox_oracle,
    exact_cost,
    generate_problem,
    load_problem,
    mass_diagram,
    performance_profile,
    run_battery,
    save_problem,
)

__version__ = "0.1.0"
