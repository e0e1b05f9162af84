"""Weighted simultaneous transitions: choosing diagonal directions to minimize
the total overlap penalty, exactly (enumeration) and heuristically (greedy
flips).  Deciding whether the optimal penalty stays under a budget is hard in
general, which is why the heuristic exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from .geometry import AxisOrder, LabelSpec, Slot
from .planner import (
    OverlapReport,
    TransitionDiff,
    diff_labelings,
    evaluate_plan,
    plan_simultaneous,
)

EXACT_DIAGONAL_LIMIT = 20

DirectionAssignment = Dict[str, AxisOrder]


@dataclass(frozen=True)
class WeightedInstance:
    """A weighted transition plus the penalty budget k.

    `frozen` pins the routes of selected diagonal movements; solvers only
    optimize over the remaining free diagonals.
    """

    specs: Mapping[str, LabelSpec]
    diff: TransitionDiff
    k: float = 0.0
    frozen: Mapping[str, AxisOrder] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if any(s.weight < 0 for s in self.specs.values()):
            raise ValueError("weights must be non-negative")
        if self.frozen is None:
            object.__setattr__(self, "frozen", {})
        diagonals = {m.label_id for m in self.diff.movements if m.diagonal}
        unknown = set(self.frozen) - diagonals
        if unknown:
            raise ValueError(f"frozen directions for non-diagonal labels: {unknown}")

    @property
    def diagonal_ids(self) -> Tuple[str, ...]:
        """Free diagonal movements (frozen ones are not decision variables)."""
        return tuple(sorted(m.label_id for m in self.diff.movements
                            if m.diagonal and m.label_id not in self.frozen))


def penalty(report: OverlapReport) -> float:
    """Sum of weight products over overlapping pairs."""
    return sum(e.penalty for e in report.events)


def evaluate_assignment(inst: WeightedInstance,
                        assignment: Optional[Mapping[str, AxisOrder]] = None
                        ) -> float:
    directions = dict(inst.frozen)
    directions.update(assignment or {})
    plan = plan_simultaneous(inst.diff, directions=directions)
    return penalty(evaluate_plan(plan, inst.specs))


def solve_directions_exact(inst: WeightedInstance
                           ) -> Tuple[DirectionAssignment, float]:
    """Enumerate all direction assignments; ties break lexicographically
    (HorizontalFirst before VerticalFirst, labels by id)."""
    ids = inst.diagonal_ids
    if len(ids) > EXACT_DIAGONAL_LIMIT:
        raise ValueError("exceeds exact limit")
    best_assignment: DirectionAssignment = {}
    best_w: Optional[float] = None
    for combo in itertools.product(
            (AxisOrder.HORIZONTAL_FIRST, AxisOrder.VERTICAL_FIRST),
            repeat=len(ids)):
        assignment = dict(zip(ids, combo))
        w = evaluate_assignment(inst, assignment)
        if best_w is None or w < best_w - 1e-12:
            best_w = w
            best_assignment = assignment
    assert best_w is not None
    return best_assignment, best_w


def solve_directions_heuristic(inst: WeightedInstance,
                               max_iters: int = 100
                               ) -> Tuple[DirectionAssignment, float]:
    """Greedy single-flip descent from the all-HorizontalFirst assignment."""
    ids = inst.diagonal_ids
    current: DirectionAssignment = {pid: AxisOrder.HORIZONTAL_FIRST for pid in ids}
    current_w = evaluate_assignment(inst, current)
    for _ in range(max_iters):
        best_flip = None
        best_w = current_w
        for pid in ids:
            trial = dict(current)
            trial[pid] = (AxisOrder.VERTICAL_FIRST
                          if trial[pid] is AxisOrder.HORIZONTAL_FIRST
                          else AxisOrder.HORIZONTAL_FIRST)
            w = evaluate_assignment(inst, trial)
            if w < best_w - 1e-12:
                best_w = w
                best_flip = pid
        if best_flip is None:
            break
        current[best_flip] = (AxisOrder.VERTICAL_FIRST
                              if current[best_flip] is AxisOrder.HORIZONTAL_FIRST
                              else AxisOrder.HORIZONTAL_FIRST)
        current_w = best_w
    return current, current_w


def decide_within_budget(inst: WeightedInstance) -> bool:
    """True iff some direction assignment keeps the total penalty at most k."""
    _, w = solve_directions_exact(inst)
    return w <= inst.k + 1e-12


@dataclass(frozen=True)
class ClauseGadget:
    """Two weight-1 diagonal movers realizing a 2-literal OR.

    Routing a label through its outer corner means "true"; the gadget incurs
    penalty exactly 1 when both labels pick the inner route and 0 otherwise.
    """

    instance: WeightedInstance
    inward: DirectionAssignment
    outward: DirectionAssignment

    @property
    def label_ids(self) -> Tuple[str, str]:
        ids = self.instance.diagonal_ids
        return ids[0], ids[1]


def clause_gadget(origin: Tuple[float, float] = (0.0, 0.0),
                  prefix: str = "") -> ClauseGadget:
    """Build the two-label OR gadget at the given origin.

    The first label moves top-left to bottom-right, the second top-right to
    bottom-left one unit up-right of it; the inner intermediate corners make
    the movers cross during their second legs, the outer ones clear each
    other.  Coordinates are certified by the overlap engine in the tests.
    """
    ox, oy = origin
    a_id, b_id = prefix + "x", prefix + "y"
    specs = {
        a_id: LabelSpec(a_id, (ox, oy), 1.0, 1.0, weight=1.0),
        b_id: LabelSpec(b_id, (ox + 1.0, oy + 1.0), 1.0, 1.0, weight=1.0),
    }
    l1 = {a_id: Slot.TOP_LEFT, b_id: Slot.TOP_RIGHT}
    l2 = {a_id: Slot.BOTTOM_RIGHT, b_id: Slot.BOTTOM_LEFT}
    diff = diff_labelings(l1, l2, specs)
    inward = {a_id: AxisOrder.HORIZONTAL_FIRST, b_id: AxisOrder.VERTICAL_FIRST}
    outward = {a_id: AxisOrder.VERTICAL_FIRST, b_id: AxisOrder.HORIZONTAL_FIRST}
    return ClauseGadget(WeightedInstance(specs, diff, k=0.0), inward, outward)
