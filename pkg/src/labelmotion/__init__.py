"""Planning and evaluation of animated transitions between map labelings."""

from .geometry import (
    AxisOrder,
    LabelSpec,
    OverlapEvent,
    Rect,
    Slot,
    Trajectory,
    candidate_rect,
    make_trajectory,
    rect_at,
    rect_overlap_bound,
    rects_overlap,
    swept_overlap,
)
from .labeler import build_conflict_graph, greedy_mis, relabel_stable
from .planner import (
    DAG,
    NAIVE,
    SIMULTANEOUS,
    Movement,
    MovementGraph,
    OverlapReport,
    TransitionDiff,
    TransitionPlan,
    build_movement_graph,
    check_bound,
    diff_labelings,
    evaluate_plan,
    min_feedback_arc_set,
    plan_dag,
    plan_naive,
    plan_simultaneous,
    plan_to_json,
)
from .weighted import (
    WeightedInstance,
    clause_gadget,
    penalty,
    solve_directions_exact,
    solve_directions_heuristic,
)

__version__ = "0.1.0"

__all__ = [
    "AxisOrder", "LabelSpec", "OverlapEvent", "Rect", "Slot", "Trajectory",
    "candidate_rect", "make_trajectory", "rect_at", "rect_overlap_bound",
    "rects_overlap", "swept_overlap",
    "build_conflict_graph", "greedy_mis", "relabel_stable",
    "DAG", "NAIVE", "SIMULTANEOUS", "Movement", "MovementGraph",
    "OverlapReport", "TransitionDiff", "TransitionPlan",
    "build_movement_graph", "check_bound", "diff_labelings", "evaluate_plan",
    "min_feedback_arc_set", "plan_dag", "plan_naive", "plan_simultaneous",
    "plan_to_json",
    "WeightedInstance", "clause_gadget", "penalty",
    "solve_directions_exact", "solve_directions_heuristic",
    "__version__",
]
