"""Reference instances with engine-certified overlap counts.

The geometries reconstruct worst-case configurations: a corner blocker for a
single diagonal mover, the degree-14 consecutive neighborhood, the n+m
tightness instance (corner-blocker gadgets plus one swap cycle), the shift
chain, the 12-neighbor simultaneous configuration, and the two-label OR
gadget.  Coordinates were derived with the overlap engine as certifier and
are frozen here; expected counts are asserted by `verify_fixture`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import AxisOrder, LabelSpec, Slot
from .planner import (
    Labeling,
    TransitionDiff,
    build_movement_graph,
    check_labeling,
    diff_labelings,
    evaluate_plan,
    exhaustive_best_order,
    min_feedback_arc_set,
    plan_dag,
    plan_naive,
    plan_simultaneous,
)
from .weighted import clause_gadget, evaluate_assignment

H = AxisOrder.HORIZONTAL_FIRST
V = AxisOrder.VERTICAL_FIRST
TL, TR, BL, BR = Slot.TOP_LEFT, Slot.TOP_RIGHT, Slot.BOTTOM_LEFT, Slot.BOTTOM_RIGHT

FIXTURE_NAMES = ("lemma1", "fig4b_degree14", "fig5_n_plus_m", "shift_chain",
                 "fig8b_twelve", "clause_gadget", "swap_cycle")


@dataclass
class FixtureInstance:
    name: str
    specs: Dict[str, LabelSpec]
    source: Labeling
    target: Labeling
    routes: Dict[str, AxisOrder] = field(default_factory=dict)
    order: Optional[List[str]] = None  # prescribed consecutive order

    def diff(self) -> TransitionDiff:
        d = diff_labelings(self.source, self.target, self.specs)
        if self.routes:
            movements = tuple(
                replace(m, axis_order=self.routes.get(m.label_id, m.axis_order))
                for m in d.movements)
            d = replace(d, movements=movements)
        return d


def _rows_to_instance(name: str, rows: Sequence[Tuple], order=None) -> FixtureInstance:
    specs = {pid: LabelSpec(pid, anchor, 1.0, 1.0) for pid, anchor, *_ in rows}
    source = {pid: frm for pid, _, frm, _, _ in rows}
    target = {pid: to for pid, _, _, to, _ in rows}
    routes = {pid: route for pid, _, frm, to, route in rows
              if frm is not to and route is not None}
    return FixtureInstance(name, specs, source, target, routes, order)


def lemma1() -> FixtureInstance:
    """One diagonal mover, one stationary blocker on the traversed corner."""
    rows = [
        ("mover", (0.0, 0.0), TL, BR, V),
        ("blocker", (-0.5, -0.5), BL, BL, None),
    ]
    return _rows_to_instance("lemma1", rows)


# Frozen from the engine-certified search: seven labels moving before the
# center and seven after, each overlapping it exactly once.
_FIG4B_ROWS = [
    ("g1", (-1.95, 1.00), TR, BL, V),
    ("g2", (-1.95, 1.65), BL, TR, H),
    ("g3", (-1.95, 1.65), TL, BR, H),
    ("g4", (-1.90, -1.90), TL, TR, H),
    ("g5", (-1.90, -0.90), TL, TR, H),
    ("g6", (0.05, 1.85), TR, BL, H),
    ("g7", (0.15, 1.85), BR, TL, H),
    ("center", (0.0, 0.0), TL, BR, V),
    ("r1", (-0.30, -1.90), TR, BL, H),
    ("r2", (-0.30, -1.00), TL, BR, V),
    ("r3", (1.75, -1.80), TL, BR, V),
    ("r4", (1.75, -1.80), TR, BL, H),
    ("r5", (1.80, -0.60), TL, TR, H),
    ("r6", (1.80, 0.20), BR, TL, H),
    ("r7", (1.95, -1.80), BL, TR, V),
]


def fig4b_degree14() -> FixtureInstance:
    """Center label overlapping 14 others in a consecutive transition."""
    order = [r[0] for r in _FIG4B_ROWS]
    return _rows_to_instance("fig4b_degree14", _FIG4B_ROWS, order)


def _corner_blocker_gadget(rows: List[Tuple], idx: int, ox: float, oy: float) -> None:
    """Diagonal mover with a stationary blocker on its traversed corner."""
    rows.append((f"m{idx}", (ox, oy), TL, BR, V))
    rows.append((f"b{idx}", (ox - 0.5, oy - 0.5), BL, BL, None))


def fig5_n_plus_m() -> FixtureInstance:
    """Eight movers with min feedback arc set 1 forcing n + m = 9 overlaps.

    Six independent corner-blocker gadgets plus one swap pair whose two
    diagonal movers also pass stationary blockers: every order pays one
    overlap per blocker (8) and one for the swap cycle (1).
    """
    rows: List[Tuple] = []
    for i in range(1, 7):
        _corner_blocker_gadget(rows, i, 10.0 * i, 0.0)
    # swap pair at the origin: ends exchange onto each other's starts
    rows.append(("swap_a", (0.0, 0.0), TL, BR, V))     # via BL
    rows.append(("blk_a", (-0.5, -0.5), BL, BL, None))
    rows.append(("swap_b", (0.0, 0.5), BR, TL, V))     # via TR
    rows.append(("blk_b", (1.5, 2.0), BL, BL, None))   # rect (0.5, 1.0)
    return _rows_to_instance("fig5_n_plus_m", rows)


def shift_chain(k: int = 5) -> FixtureInstance:
    """k movers in a row, each moving onto the next one's start position."""
    if k < 2:
        raise ValueError("shift chain needs at least 2 movers")
    rows = [(f"m{i}", (float(i), 0.0), TL, TR, H) for i in range(1, k + 1)]
    order = [r[0] for r in rows]
    return _rows_to_instance("shift_chain", rows, order)


def swap_cycle(m: int = 1) -> FixtureInstance:
    """m independent swap pairs; each is a 2-cycle in the movement graph."""
    if not 1 <= m <= 4:
        raise ValueError("swap_cycle supports 1..4 pairs (exact-search limits)")
    rows: List[Tuple] = []
    for i in range(m):
        ox = 10.0 * i
        rows.append((f"a{i}", (ox, 0.0), TL, TR, H))
        rows.append((f"b{i}", (ox, 0.5), TR, TL, H))
    return _rows_to_instance("swap_cycle", rows)


# Frozen from the engine-certified search: twelve movers that all overlap the
# central diagonal mover in a simultaneous transition.
_FIG8B_ROWS = [
    ("center", (0.0, 0.0), TL, BR, V),
    ("m01", (-1.90, -1.95), TL, BR, H),
    ("m02", (-1.90, -1.60), BR, TL, V),
    ("m03", (-1.90, -0.15), BR, TL, V),
    ("m04", (-1.90, 0.10), BL, TR, H),
    ("m05", (-1.75, 1.15), BL, TR, H),
    ("m06", (-0.90, -0.90), BR, TL, H),
    ("m07", (-0.40, -1.90), BR, TL, V),
    ("m08", (0.10, -1.90), TR, BL, H),
    ("m09", (0.40, 0.20), BR, TL, H),
    ("m10", (0.40, 1.40), BR, TL, H),
    ("m11", (1.10, -1.85), TR, BL, H),
    ("m12", (1.40, 0.50), BR, TL, H),
]


def fig8b_twelve() -> FixtureInstance:
    """Simultaneous transition where the center overlaps 12 moving labels."""
    return _rows_to_instance("fig8b_twelve", _FIG8B_ROWS)


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class FixtureReport:
    fixture: str
    checks: List[Check]
    events: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _event_lines(report) -> List[str]:
    return [f"{e.id_a} x {e.id_b} during [{e.t_start:.3f}, {e.t_end:.3f}]"
            f" penalty {e.penalty:g}" for e in report.events]


def _central_pairs(report, center: str) -> int:
    return sum(1 for e in report.events if center in (e.id_a, e.id_b))


def verify_fixture(name: str, param: Optional[int] = None) -> FixtureReport:
    """Build a fixture, run its designated style, and check the exact counts."""
    if name == "lemma1":
        inst = lemma1()
        diff = inst.diff()
        report = evaluate_plan(plan_simultaneous(diff, directions=inst.routes),
                               inst.specs)
        checks = [Check("overlap pairs", 1, report.pair_count)]
        return FixtureReport(name, checks, _event_lines(report))

    if name == "fig4b_degree14":
        inst = fig4b_degree14()
        diff = inst.diff()
        plan = plan_naive(diff, inst.order)
        report = evaluate_plan(plan, inst.specs)
        checks = [Check("center overlap pairs", 14, _central_pairs(report, "center"))]
        return FixtureReport(name, checks, _event_lines(report))

    if name == "fig5_n_plus_m":
        inst = fig5_n_plus_m()
        diff = inst.diff()
        graph = build_movement_graph(diff.movements, inst.specs)
        fas = min_feedback_arc_set(graph, limit=10)
        n = len(diff.movements)
        best_order, best_count = exhaustive_best_order(diff, inst.specs)
        plan = plan_naive(diff, best_order)
        report = evaluate_plan(plan, inst.specs)
        checks = [
            Check("movers n", 8, n),
            Check("min feedback arc set m", 1, len(fas)),
            Check("best-order overlap pairs", 9, report.pair_count),
            Check("exhaustive minimum", 9, best_count),
        ]
        return FixtureReport(name, checks, _event_lines(report))

    if name == "shift_chain":
        k = param if param is not None else 5
        inst = shift_chain(k)
        diff = inst.diff()
        front = evaluate_plan(plan_naive(diff, inst.order), inst.specs)
        naive_plan = plan_naive(diff, inst.order)
        graph = build_movement_graph(diff.movements, inst.specs)
        dag_report = evaluate_plan(plan_dag(diff, graph), inst.specs)
        simul_plan = plan_simultaneous(diff)
        simul_report = evaluate_plan(simul_plan, inst.specs)
        checks = [
            Check("naive front-first pairs", k - 1, front.pair_count),
            Check("naive movement span", float(k), naive_plan.movement_span),
            Check("dag pairs", 0, dag_report.pair_count),
            Check("simultaneous pairs", 0, simul_report.pair_count),
            Check("simultaneous movement span", 1.0, simul_plan.movement_span),
        ]
        return FixtureReport(name, checks, _event_lines(front))

    if name == "fig8b_twelve":
        inst = fig8b_twelve()
        check_labeling(inst.source, inst.specs)
        check_labeling(inst.target, inst.specs)
        diff = inst.diff()
        plan = plan_simultaneous(diff, directions=inst.routes)
        report = evaluate_plan(plan, inst.specs)
        n = len(diff.movements)
        checks = [
            Check("center overlap pairs", 12, _central_pairs(report, "center")),
            Check("within 6n bound", True, report.pair_count <= 6 * n),
        ]
        return FixtureReport(name, checks, _event_lines(report))

    if name == "clause_gadget":
        gadget = clause_gadget()
        a, b = gadget.label_ids
        outcomes = {}
        for ca in (False, True):
            for cb in (False, True):
                assignment = {
                    a: gadget.outward[a] if ca else gadget.inward[a],
                    b: gadget.outward[b] if cb else gadget.inward[b],
                }
                outcomes[(ca, cb)] = evaluate_assignment(gadget.instance, assignment)
        checks = [
            Check("both inward penalty", 1.0, outcomes[(False, False)]),
            Check("first outward penalty", 0.0, outcomes[(True, False)]),
            Check("second outward penalty", 0.0, outcomes[(False, True)]),
            Check("both outward penalty", 0.0, outcomes[(True, True)]),
        ]
        return FixtureReport(name, checks)

    if name == "swap_cycle":
        m = param if param is not None else 1
        inst = swap_cycle(m)
        diff = inst.diff()
        graph = build_movement_graph(diff.movements, inst.specs)
        fas = min_feedback_arc_set(graph, limit=10)
        best_order, best_count = exhaustive_best_order(diff, inst.specs)
        dag_report = evaluate_plan(plan_dag(diff, graph), inst.specs)
        checks = [
            Check("min feedback arc set", m, len(fas)),
            Check("best-order overlap pairs", m, best_count),
            Check("dag overlap pairs", m, dag_report.pair_count),
        ]
        return FixtureReport(name, checks, _event_lines(dag_report))

    raise ValueError(f"unknown fixture {name!r}")


def parse_fixture_id(text: str) -> Tuple[str, Optional[int]]:
    """Parse ids like "shift_chain(5)" into (name, parameter)."""
    text = text.strip()
    if "(" in text:
        name, rest = text.split("(", 1)
        if not rest.endswith(")"):
            raise ValueError(f"malformed fixture id {text!r}")
        return name.strip(), int(rest[:-1])
    return text, None
