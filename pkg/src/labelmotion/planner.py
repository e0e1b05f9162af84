"""Transition planning: movement graphs, scheduling styles, overlap accounting.

A transition takes labeling L1 to labeling L2 through a removal phase, a
movement phase, and an addition phase.  The three styles differ only in how
movements are scheduled: naive (strictly sequential), DAG-based (topological
with parallelism, cycles broken heuristically), and simultaneous.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .geometry import (
    EPS,
    AxisOrder,
    LabelSpec,
    OverlapEvent,
    Rect,
    Slot,
    Trajectory,
    candidate_rect,
    make_trajectory,
    overlap_intervals,
    rects_overlap,
    slots_diagonal,
)

Labeling = Dict[str, Slot]

NAIVE = "naive"
DAG = "dag"
SIMULTANEOUS = "simultaneous"
STYLES = (NAIVE, DAG, SIMULTANEOUS)

PLAN_FORMAT_VERSION = 1
KEYFRAME_STEP = 0.1


@dataclass(frozen=True)
class Movement:
    """One label's slot change, including the diagonal leg order."""

    label_id: str
    from_slot: Slot
    to_slot: Slot
    axis_order: AxisOrder = AxisOrder.HORIZONTAL_FIRST

    def __post_init__(self) -> None:
        if self.from_slot is self.to_slot:
            raise ValueError("null movement")

    @property
    def diagonal(self) -> bool:
        return slots_diagonal(self.from_slot, self.to_slot)

    @property
    def duration(self) -> float:
        return 2.0 if self.diagonal else 1.0

    def trajectory(self, spec: LabelSpec, start_time: float = 0.0) -> Trajectory:
        return make_trajectory(spec, self.from_slot, self.to_slot,
                               self.axis_order, start_time)

    def positions(self, spec: LabelSpec) -> Tuple[Rect, Optional[Rect], Rect]:
        """(start, intermediate or None, end) rects."""
        traj = self.trajectory(spec)
        rects = traj.leg_rects()
        if len(rects) == 3:
            return rects[0], rects[1], rects[2]
        return rects[0], None, rects[1]


def check_labeling(labeling: Labeling, specs: Mapping[str, LabelSpec]) -> None:
    """Raise if the labeling has an internal overlap or unknown ids."""
    items = sorted(labeling.items())
    rects = []
    for pid, slot in items:
        if pid not in specs:
            raise KeyError(f"labeling references unknown label id {pid!r}")
        rects.append((pid, candidate_rect(specs[pid], slot)))
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            if rects_overlap(rects[i][1], rects[j][1]):
                raise ValueError(
                    f"labeling not overlap-free: {rects[i][0]!r} and {rects[j][0]!r}")


@dataclass(frozen=True)
class TransitionDiff:
    """Decomposition of an L1 -> L2 change into removals/additions/movements."""

    source: Mapping[str, Slot]
    target: Mapping[str, Slot]
    removed: Tuple[str, ...]
    added: Tuple[str, ...]
    movements: Tuple[Movement, ...]

    @property
    def stationary(self) -> Dict[str, Slot]:
        moving = {m.label_id for m in self.movements}
        return {pid: slot for pid, slot in self.source.items()
                if pid in self.target and pid not in moving
                and self.target[pid] is slot}

    def with_axis_orders(self, default: AxisOrder,
                         overrides: Optional[Mapping[str, AxisOrder]] = None
                         ) -> "TransitionDiff":
        """Re-route diagonal movements; adjacent movements are unaffected."""
        overrides = overrides or {}
        movements = tuple(
            replace(m, axis_order=overrides.get(m.label_id, default))
            if m.diagonal else m
            for m in self.movements)
        return replace(self, movements=movements)


def diff_labelings(l1: Labeling, l2: Labeling,
                   specs: Mapping[str, LabelSpec],
                   validate: bool = True) -> TransitionDiff:
    """Split the change from l1 to l2 into removals, additions and movements.

    Movements keep l1's enumeration order (the order the need is recognized).
    """
    if validate:
        check_labeling(l1, specs)
        check_labeling(l2, specs)
    removed = tuple(pid for pid in l1 if pid not in l2)
    added = tuple(pid for pid in l2 if pid not in l1)
    movements = tuple(
        Movement(pid, l1[pid], l2[pid])
        for pid in l1 if pid in l2 and l1[pid] is not l2[pid])
    return TransitionDiff(dict(l1), dict(l2), removed, added, movements)


@dataclass
class MovementGraph:
    """Directed precedence graph over movements: edge u -> v means u before v."""

    vertices: Tuple[str, ...]
    edges: Set[Tuple[str, str]] = field(default_factory=set)

    def successors(self, v: str) -> List[str]:
        return [b for (a, b) in self.edges if a == v]

    def predecessors(self, v: str) -> List[str]:
        return [a for (a, b) in self.edges if b == v]

    def in_degree(self, v: str) -> int:
        return sum(1 for (_, b) in self.edges if b == v)

    def subgraph(self, keep: Iterable[str]) -> "MovementGraph":
        keep_set = set(keep)
        return MovementGraph(
            tuple(v for v in self.vertices if v in keep_set),
            {(a, b) for (a, b) in self.edges if a in keep_set and b in keep_set})

    def has_cycle(self) -> bool:
        return len(self._topological_prefix()) < len(self.vertices)

    def cyclic_vertices(self) -> Set[str]:
        """Vertices lying on at least one directed cycle."""
        order = self._topological_prefix()
        return set(self.vertices) - set(order)

    def _topological_prefix(self) -> List[str]:
        # Kahn's algorithm; the processed prefix excludes all cycle vertices
        # and anything only reachable through them is still processed when
        # its in-edges resolve, so leftovers are exactly the cycle closure.
        indeg = {v: 0 for v in self.vertices}
        for (_, b) in self.edges:
            indeg[b] += 1
        ready = sorted(v for v in self.vertices if indeg[v] == 0)
        out: List[str] = []
        succ: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for (a, b) in self.edges:
            succ[a].append(b)
        while ready:
            v = ready.pop(0)
            out.append(v)
            for w in sorted(succ[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
            ready.sort()
        return out


def build_movement_graph(movements: Sequence[Movement],
                         specs: Mapping[str, LabelSpec],
                         stationary: Iterable[Rect] = ()) -> MovementGraph:
    """Precedence edges per the movement-graph rule.

    u -> v (u before v) when an intermediate or end position of v overlaps
    u's start, or v's end overlaps an intermediate of u; ties between
    intermediates are broken by enumeration order.  Stationary labels never
    constrain ordering, so `stationary` contributes no vertices or edges.
    """
    ids = [m.label_id for m in movements]
    if len(set(ids)) != len(ids):
        raise ValueError("movements must reference distinct labels")
    del stationary  # never creates precedence constraints
    pos = {m.label_id: m.positions(specs[m.label_id]) for m in movements}
    graph = MovementGraph(tuple(ids))
    for i, mi in enumerate(movements):
        si, inter_i, _ = pos[mi.label_id]
        for j, mj in enumerate(movements):
            if i == j:
                continue
            _, inter_j, ej = pos[mj.label_id]
            before = False
            if inter_j is not None and rects_overlap(inter_j, si):
                before = True
            if rects_overlap(ej, si):
                before = True
            if inter_i is not None and rects_overlap(ej, inter_i):
                before = True
            if (inter_i is not None and inter_j is not None
                    and i < j and rects_overlap(inter_i, inter_j)):
                before = True
            if before:
                graph.edges.add((mi.label_id, mj.label_id))
    return graph


EXACT_FAS_LIMIT = 10


def min_feedback_arc_set(graph: MovementGraph,
                         limit: int = EXACT_FAS_LIMIT) -> Set[Tuple[str, str]]:
    """Exact minimum feedback arc set via ordering search (DP over subsets)."""
    n = len(graph.vertices)
    if n > limit:
        raise ValueError("use heuristic")
    if n == 0:
        return set()
    verts = list(graph.vertices)
    index = {v: i for i, v in enumerate(verts)}
    # back_mask[v] = bitmask of targets of v's out-edges; placing v after a
    # placed target makes that edge a back edge.
    out_mask = [0] * n
    for (a, b) in graph.edges:
        out_mask[index[a]] |= 1 << index[b]
    size = 1 << n
    best = [n * n + 1] * size
    choice = [-1] * size
    best[0] = 0
    for mask in range(size):
        if best[mask] > n * n:
            continue
        for v in range(n):
            if mask & (1 << v):
                continue
            cost = best[mask] + bin(out_mask[v] & mask).count("1")
            nxt = mask | (1 << v)
            if cost < best[nxt]:
                best[nxt] = cost
                choice[nxt] = v
    # Reconstruct an optimal ordering, then collect its back edges.
    order: List[int] = []
    mask = size - 1
    while mask:
        v = choice[mask]
        order.append(v)
        mask &= ~(1 << v)
    order.reverse()
    position = {verts[v]: p for p, v in enumerate(order)}
    return {(a, b) for (a, b) in graph.edges if position[a] > position[b]}


@dataclass(frozen=True)
class TransitionPlan:
    """Scheduled transition: phases, movement start times, total duration.

    Start times are absolute plan times; the removal phase (when present)
    occupies [0, 1] and movements never start before it ends.  The addition
    phase begins when the last movement finishes.
    """

    style: str
    source: Mapping[str, Slot]
    target: Mapping[str, Slot]
    removals: Tuple[str, ...]
    additions: Tuple[str, ...]
    scheduled: Tuple[Tuple[Movement, float], ...]
    broken: Tuple[str, ...] = ()  # cycle-break removals (DAG style)

    @property
    def removal_duration(self) -> float:
        return 1.0 if self.removals else 0.0

    @property
    def movement_span(self) -> float:
        if not self.scheduled:
            return 0.0
        offset = self.removal_duration
        return max(t + m.duration for m, t in self.scheduled) - offset

    @property
    def addition_start(self) -> float:
        return self.removal_duration + self.movement_span

    @property
    def addition_duration(self) -> float:
        return 1.0 if self.additions else 0.0

    @property
    def makespan(self) -> float:
        return self.removal_duration + self.movement_span + self.addition_duration

    @property
    def stationary(self) -> Dict[str, Slot]:
        moving = {m.label_id for m, _ in self.scheduled}
        return {pid: slot for pid, slot in self.source.items()
                if pid in self.target and pid not in moving}


def _schedule(diff: TransitionDiff, style: str,
              starts: Sequence[float], broken: Tuple[str, ...] = ()) -> TransitionPlan:
    offset = 1.0 if diff.removed else 0.0
    scheduled = tuple((m, offset + t) for m, t in zip(diff.movements, starts))
    return TransitionPlan(style, dict(diff.source), dict(diff.target),
                          diff.removed, diff.added, scheduled, broken)


def plan_naive(diff: TransitionDiff,
               order: Optional[Sequence[str]] = None) -> TransitionPlan:
    """Removals, then movements strictly one after another, then additions."""
    ids = [m.label_id for m in diff.movements]
    if order is None:
        order = ids
    if sorted(order) != sorted(ids):
        raise ValueError("order is not a permutation of the movement labels")
    by_id = {m.label_id: m for m in diff.movements}
    starts: Dict[str, float] = {}
    t = 0.0
    for pid in order:
        starts[pid] = t
        t += by_id[pid].duration
    return _schedule(diff, NAIVE, [starts[m.label_id] for m in diff.movements])


CycleBreaker = Callable[[MovementGraph], str]


def lowest_in_degree_breaker(graph: MovementGraph) -> str:
    """Default breaker: lowest in-degree among cycle vertices, then smallest id."""
    cyclic = graph.cyclic_vertices()
    return min(cyclic, key=lambda v: (graph.in_degree(v), v))


def plan_dag(diff: TransitionDiff, graph: MovementGraph,
             breaker: CycleBreaker = lowest_in_degree_breaker) -> TransitionPlan:
    """Longest-path schedule over the movement graph; cycles broken greedily.

    Broken vertices start unconditionally at the beginning of the movement
    phase; the remaining DAG schedules each movement at the max finish time
    of its predecessors, so unrelated movements run simultaneously.
    """
    by_id = {m.label_id: m for m in diff.movements}
    residual = graph.subgraph(graph.vertices)
    broken: List[str] = []
    while residual.has_cycle():
        v = breaker(residual)
        broken.append(v)
        residual = residual.subgraph(set(residual.vertices) - {v})
    starts: Dict[str, float] = {v: 0.0 for v in broken}
    finish: Dict[str, float] = {}
    indeg = {v: residual.in_degree(v) for v in residual.vertices}
    ready = sorted(v for v in residual.vertices if indeg[v] == 0)
    pred: Dict[str, List[str]] = {v: residual.predecessors(v) for v in residual.vertices}
    succ: Dict[str, List[str]] = {v: residual.successors(v) for v in residual.vertices}
    while ready:
        v = ready.pop(0)
        start = max((finish[p] for p in pred[v]), default=0.0)
        starts[v] = start
        finish[v] = start + by_id[v].duration
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    return _schedule(diff, DAG,
                     [starts[m.label_id] for m in diff.movements],
                     tuple(broken))


def plan_simultaneous(diff: TransitionDiff,
                      axis_order: AxisOrder = AxisOrder.HORIZONTAL_FIRST,
                      directions: Optional[Mapping[str, AxisOrder]] = None
                      ) -> TransitionPlan:
    """All movements start together right after the removal phase."""
    routed = diff.with_axis_orders(axis_order, directions)
    return _schedule(routed, SIMULTANEOUS, [0.0] * len(routed.movements))


@dataclass(frozen=True)
class OverlapReport:
    """Every overlapping pair of a plan, with merged intervals and penalties."""

    events: Tuple[OverlapEvent, ...]
    pair_count: int
    total_penalty: float
    makespan: float


def _presence_tracks(plan: TransitionPlan, specs: Mapping[str, LabelSpec]):
    """(id, geometry, presence window) per label participating in the plan."""
    makespan = plan.makespan
    tracks = []
    for pid, slot in plan.stationary.items():
        tracks.append((pid, candidate_rect(specs[pid], slot), (0.0, makespan), False))
    for pid in plan.removals:
        rect = candidate_rect(specs[pid], plan.source[pid])
        tracks.append((pid, rect, (0.0, min(1.0, makespan)), False))
    for pid in plan.additions:
        rect = candidate_rect(specs[pid], plan.target[pid])
        tracks.append((pid, rect, (plan.addition_start, makespan), False))
    for movement, start in plan.scheduled:
        traj = movement.trajectory(specs[movement.label_id], start)
        tracks.append((movement.label_id, traj, (0.0, makespan), True))
    return tracks


def evaluate_plan(plan: TransitionPlan,
                  specs: Mapping[str, LabelSpec]) -> OverlapReport:
    """Exact pairwise overlap accounting over the whole plan horizon.

    Removed labels exist only during the removal phase, added labels only
    during the addition phase; movers are clamped to their endpoint rects
    outside their scheduled window.  Episodes of one pair merge into a single
    event spanning first contact to last contact.
    """
    tracks = sorted(_presence_tracks(plan, specs), key=lambda t: t[0])
    events: List[OverlapEvent] = []
    for i in range(len(tracks)):
        id_a, geo_a, win_a, moving_a = tracks[i]
        for j in range(i + 1, len(tracks)):
            id_b, geo_b, win_b, moving_b = tracks[j]
            if not (moving_a or moving_b):
                continue  # two static phases from the same overlap-free labeling
            t0 = max(win_a[0], win_b[0])
            t1 = min(win_a[1], win_b[1])
            if t1 - t0 <= EPS:
                continue
            intervals = overlap_intervals(geo_a, geo_b, t0, t1)
            if not intervals:
                continue
            penalty = specs[id_a].weight * specs[id_b].weight
            events.append(OverlapEvent(id_a, id_b,
                                       intervals[0][0], intervals[-1][1],
                                       penalty))
    events.sort(key=lambda e: (e.id_a, e.id_b))
    return OverlapReport(tuple(events), len(events),
                         sum(e.penalty for e in events), plan.makespan)


def check_bound(report: OverlapReport, style: str, n: int, m: int = 0) -> bool:
    """Worst-case overlap bounds: naive 7n, dag n+m, simultaneous 6n."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    if style == NAIVE:
        bound = 7 * n
    elif style == DAG:
        bound = n + m
    elif style == SIMULTANEOUS:
        bound = 6 * n
    else:
        raise ValueError(f"unknown style {style!r}")
    return report.pair_count <= bound


def _pair_cost(first: Movement, second: Movement,
               specs: Mapping[str, LabelSpec]) -> bool:
    """Does this ordered pair overlap when run consecutively (first, second)?

    In a strictly sequential plan the interaction of two movers depends only
    on their relative order: while one moves the other sits at its start or
    end rect, and between their slots both are static at rects that do not
    change with the rest of the order.
    """
    t_a = first.trajectory(specs[first.label_id], 0.0)
    t_b = second.trajectory(specs[second.label_id], first.duration)
    horizon = first.duration + second.duration
    return bool(overlap_intervals(t_a, t_b, 0.0, horizon + 1.0))


def exhaustive_best_order(diff: TransitionDiff, specs: Mapping[str, LabelSpec],
                          limit: int = 8) -> Tuple[List[str], int]:
    """Minimum-overlap consecutive order by searching all permutations.

    Mover-stationary (and mover-removal/addition) overlaps are order
    independent, so only mover-mover pair costs vary; those are precomputed
    for both orders of each pair and summed per permutation.
    """
    movements = list(diff.movements)
    n = len(movements)
    if n > limit:
        raise ValueError("instance above exhaustive search limit")
    base_plan = plan_naive(diff)
    base_report = evaluate_plan(base_plan, specs)
    mover_ids = {m.label_id for m in movements}
    base = sum(1 for e in base_report.events
               if not (e.id_a in mover_ids and e.id_b in mover_ids))
    cost: Dict[Tuple[str, str], int] = {}
    for a, b in itertools.permutations(movements, 2):
        cost[(a.label_id, b.label_id)] = 1 if _pair_cost(a, b, specs) else 0
    best_ids: Optional[List[str]] = None
    best_count = None
    ids = [m.label_id for m in movements]
    for perm in itertools.permutations(range(n)):
        total = 0
        for x in range(n):
            for y in range(x + 1, n):
                total += cost[(ids[perm[x]], ids[perm[y]])]
        if best_count is None or total < best_count:
            best_count = total
            best_ids = [ids[p] for p in perm]
    assert best_ids is not None and best_count is not None
    return best_ids, base + best_count


def _keyframes(traj: Trajectory, step: float = KEYFRAME_STEP) -> List[Tuple[float, float, float]]:
    """Sampled positions plus exact leg endpoints, sorted and deduplicated."""
    from .geometry import rect_at

    times = set()
    t = traj.start_time
    while t < traj.end_time:
        times.add(round(t, 6))
        t += step
    boundary = traj.start_time
    for _ in range(len(traj.legs) + 1):
        times.add(round(boundary, 6))
        boundary += 1.0
    times.add(round(traj.end_time, 6))
    out = []
    for t in sorted(times):
        if t > traj.end_time + EPS:
            continue
        r = rect_at(traj, t)
        out.append((t, r.min_x, r.min_y))
    return out


def _rect_json(r: Rect) -> Dict[str, float]:
    return {"min_x": r.min_x, "min_y": r.min_y, "width": r.width, "height": r.height}


def plan_to_json(plan: TransitionPlan, specs: Mapping[str, LabelSpec],
                 report: Optional[OverlapReport] = None) -> Dict:
    """Versioned plan document with keyframes for animation clients."""
    if report is None:
        report = evaluate_plan(plan, specs)
    movements = []
    for movement, start in plan.scheduled:
        spec = specs[movement.label_id]
        traj = movement.trajectory(spec, start)
        rects = traj.leg_rects()
        legs = []
        t = start
        for k, (vx, vy) in enumerate(traj.legs):
            legs.append({
                "t_start": t,
                "t_end": t + 1.0,
                "from": _rect_json(rects[k]),
                "to": _rect_json(rects[k + 1]),
                "direction": ("+x" if vx > 0 else "-x") if vx else ("+y" if vy > 0 else "-y"),
            })
            t += 1.0
        movements.append({
            "label_id": movement.label_id,
            "from_slot": movement.from_slot.short,
            "to_slot": movement.to_slot.short,
            "axis_order": movement.axis_order.name,
            "start_time": start,
            "duration": movement.duration,
            "legs": legs,
            "keyframes": [[t, x, y] for t, x, y in _keyframes(traj)],
        })
    labels = {}
    for pid in sorted(set(plan.source) | set(plan.target)):
        spec = specs[pid]
        labels[pid] = {
            "anchor": list(spec.anchor),
            "width": spec.width,
            "height": spec.height,
            "weight": spec.weight,
            "text": spec.text,
        }
    return {
        "version": PLAN_FORMAT_VERSION,
        "style": plan.style,
        "makespan": plan.makespan,
        "movement_span": plan.movement_span,
        "phases": {
            "removal": [0.0, 1.0] if plan.removals else None,
            "movement": [plan.removal_duration, plan.addition_start],
            "addition": ([plan.addition_start, plan.makespan]
                         if plan.additions else None),
        },
        "removals": [{"label_id": pid,
                      "slot": plan.source[pid].short,
                      "rect": _rect_json(candidate_rect(specs[pid], plan.source[pid]))}
                     for pid in plan.removals],
        "additions": [{"label_id": pid,
                       "slot": plan.target[pid].short,
                       "rect": _rect_json(candidate_rect(specs[pid], plan.target[pid]))}
                      for pid in plan.additions],
        "stationary": [{"label_id": pid,
                        "slot": slot.short,
                        "rect": _rect_json(candidate_rect(specs[pid], slot))}
                       for pid, slot in sorted(plan.stationary.items())],
        "movements": movements,
        "overlaps": [{"id_a": e.id_a, "id_b": e.id_b,
                      "t_start": e.t_start, "t_end": e.t_end,
                      "penalty": e.penalty}
                     for e in report.events],
        "pair_count": report.pair_count,
        "total_penalty": report.total_penalty,
    }
