"""Scenario engine: viewport state, interactions, transition metrics.

Each interaction updates the view or the time of interest, recomputes the
stable labeling of the relevant visible points, plans the transition in the
configured style, and evaluates its overlaps exactly.  One plan time unit is
reported as one second.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timedelta
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from .dataset import SpatioPoint
from .geometry import LabelSpec, Rect, Slot, candidate_rect, rects_overlap
from .labeler import KEEP_THRESHOLD, build_conflict_graph, greedy_mis, relabel_stable
from .mercator import project
from .planner import (
    DAG,
    NAIVE,
    SIMULTANEOUS,
    Labeling,
    OverlapReport,
    TransitionPlan,
    build_movement_graph,
    diff_labelings,
    evaluate_plan,
    min_feedback_arc_set,
    plan_dag,
    plan_naive,
    plan_simultaneous,
)

RELEVANCE_WINDOW = timedelta(hours=3)
DEFAULT_ZOOM_RANGE = (1, 19)
DEFAULT_SCREEN = (1280, 720)
DEFAULT_LABEL_PX = (110.0, 28.0)


@dataclass(frozen=True)
class ViewState:
    center_lon: float
    center_lat: float
    zoom: int
    time_of_interest: datetime
    screen_w: int = DEFAULT_SCREEN[0]
    screen_h: int = DEFAULT_SCREEN[1]

    def viewport(self) -> Rect:
        cx, cy = project(self.center_lon, self.center_lat, self.zoom)
        return Rect(cx - self.screen_w / 2.0, cy - self.screen_h / 2.0,
                    float(self.screen_w), float(self.screen_h))


@dataclass(frozen=True)
class Pan:
    dlon: float
    dlat: float


@dataclass(frozen=True)
class Zoom:
    step: int


@dataclass(frozen=True)
class TimeShift:
    minutes: float


Action = Union[Pan, Zoom, TimeShift]


def describe_action(action: Action) -> str:
    if isinstance(action, Pan):
        return f"pan({action.dlon:+g},{action.dlat:+g})"
    if isinstance(action, Zoom):
        return f"zoom({action.step:+d})"
    return f"time_shift({action.minutes:+g}m)"


def apply_interaction(state: ViewState, action: Action,
                      zoom_range: Tuple[int, int] = DEFAULT_ZOOM_RANGE) -> ViewState:
    """New view state after a pan, step-wise zoom, or time shift."""
    if isinstance(action, Pan):
        return replace(state,
                       center_lon=state.center_lon + action.dlon,
                       center_lat=state.center_lat + action.dlat)
    if isinstance(action, Zoom):
        new_zoom = state.zoom + action.step
        if not zoom_range[0] <= new_zoom <= zoom_range[1]:
            raise ValueError(f"zoom {new_zoom} outside range {zoom_range}")
        return replace(state, zoom=new_zoom)
    if isinstance(action, TimeShift):
        return replace(state, time_of_interest=state.time_of_interest
                       + timedelta(minutes=action.minutes))
    raise ValueError(f"unsupported action {action!r}")


def relevant_points(points: Sequence[SpatioPoint], t: datetime,
                    window: timedelta = RELEVANCE_WINDOW) -> List[SpatioPoint]:
    """Points whose timestamp lies in the half-open window (t - 3h, t]."""
    lo = t - window
    return [p for p in points if lo < p.timestamp <= t]


def visible_subset(points: Sequence[SpatioPoint], view: ViewState) -> List[SpatioPoint]:
    """Points whose projected position lies in the viewport (closed)."""
    rect = view.viewport()
    out = []
    for p in points:
        x, y = project(p.lon, p.lat, view.zoom)
        if rect.contains_point(x, y):
            out.append(p)
    return out


def specs_for_points(points: Sequence[SpatioPoint], zoom: int,
                     label_px: Tuple[float, float] = DEFAULT_LABEL_PX
                     ) -> Dict[str, LabelSpec]:
    """Label geometry at the given zoom: fixed pixel size, projected anchor."""
    w, h = label_px
    out = {}
    for p in points:
        out[p.id] = LabelSpec(p.id, project(p.lon, p.lat, zoom), w, h,
                              weight=p.weight, text=p.text)
    return out


@dataclass
class TransitionRecord:
    """Metrics of one executed transition."""

    action: str
    style: str
    moved: int
    added: int
    removed: int
    pair_count: int
    total_penalty: float
    movement_span: float
    makespan: float
    n_movers: int
    fas_bound: int
    dependent_movements: int = 0
    dropped_stale: int = 0

    @property
    def duration_seconds(self) -> float:
        return self.makespan  # one time unit animates as one second


@dataclass
class TransitionMetrics:
    """Aggregate row over a run (overlap and duration summary)."""

    style: str
    transitions: int
    overlaps_total: int
    overlaps_avg: float
    overlaps_max: int
    duration_max: float
    duration_avg: float
    movement_span_max: float
    movement_span_avg: float
    moved: int
    added: int
    removed: int


def aggregate_metrics(records: Sequence[TransitionRecord]) -> TransitionMetrics:
    if not records:
        raise ValueError("no transitions to aggregate")
    overlaps = [r.pair_count for r in records]
    durations = [r.duration_seconds for r in records]
    spans = [r.movement_span for r in records]
    return TransitionMetrics(
        style=records[0].style,
        transitions=len(records),
        overlaps_total=sum(overlaps),
        overlaps_avg=sum(overlaps) / len(records),
        overlaps_max=max(overlaps),
        duration_max=max(durations),
        duration_avg=sum(durations) / len(durations),
        movement_span_max=max(spans),
        movement_span_avg=sum(spans) / len(spans),
        moved=sum(r.moved for r in records),
        added=sum(r.added for r in records),
        removed=sum(r.removed for r in records),
    )


def session_relabel(prev: Labeling, specs_now: Sequence[LabelSpec]) -> Labeling:
    """Keep-or-swap stability policy used by interactive sessions.

    Sizing works as in `relabel_stable`: the pinned recompute decides whether
    the update is worth a disruption.  Below the 2% threshold the previous
    labeling is kept (new points inserted only where they fit); at or above
    it the session swaps to a fresh unpinned labeling, which is what lets
    surviving labels change slots and movements appear at all.
    """
    specs_map = {s.label_id: s for s in specs_now}
    surviving = {pid: slot for pid, slot in prev.items() if pid in specs_map}
    graph = build_conflict_graph(list(specs_now))
    pinned = greedy_mis(graph, sorted(surviving.items()))
    if surviving and len(pinned) < KEEP_THRESHOLD * len(surviving):
        kept = dict(surviving)
        kept_rects = [candidate_rect(specs_map[pid], slot)
                      for pid, slot in kept.items()]
        for pid in sorted(specs_map):
            if pid in prev:
                continue
            for slot in Slot:
                rect = candidate_rect(specs_map[pid], slot)
                if all(not rects_overlap(rect, r) for r in kept_rects):
                    kept[pid] = slot
                    kept_rects.append(rect)
                    break
        return kept
    return greedy_mis(graph)


def _sanitize_previous(prev: Labeling, specs: Mapping[str, LabelSpec]) -> Tuple[Labeling, int]:
    """Drop previously shown labels that conflict under the new projection.

    Zooming out can make yesterday's labeling overlap at the new scale; such
    labels blink out instead of entering the plan with an invalid source.
    """
    kept: Labeling = {}
    kept_rects: List[Rect] = []
    dropped = 0
    for pid in sorted(prev):
        if pid not in specs:
            continue
        rect = candidate_rect(specs[pid], prev[pid])
        if all(not rects_overlap(rect, r) for r in kept_rects):
            kept[pid] = prev[pid]
            kept_rects.append(rect)
        else:
            dropped += 1
    return kept, dropped


class ScenarioSession:
    """Single-writer state machine: dataset, view, current labeling, style."""

    def __init__(self, points: Sequence[SpatioPoint], view: ViewState,
                 style: str = DAG,
                 label_px: Tuple[float, float] = DEFAULT_LABEL_PX,
                 zoom_range: Tuple[int, int] = DEFAULT_ZOOM_RANGE) -> None:
        if style not in (NAIVE, DAG, SIMULTANEOUS):
            raise ValueError(f"unknown style {style!r}")
        self.points = list(points)
        self.by_id = {p.id: p for p in self.points}
        self.style = style
        self.label_px = label_px
        self.zoom_range = zoom_range
        self.view = view
        self.labeling: Labeling = self._fresh_labeling(view)

    def _current_points(self, view: ViewState) -> List[SpatioPoint]:
        return visible_subset(relevant_points(self.points, view.time_of_interest), view)

    def _fresh_labeling(self, view: ViewState) -> Labeling:
        pts = self._current_points(view)
        specs = specs_for_points(pts, view.zoom, self.label_px)
        return relabel_stable({}, list(specs.values()))

    def current_specs(self) -> Dict[str, LabelSpec]:
        pts = self._current_points(self.view)
        return specs_for_points(pts, self.view.zoom, self.label_px)

    def step(self, action: Action) -> Tuple[TransitionRecord, TransitionPlan,
                                            OverlapReport, Dict[str, LabelSpec]]:
        new_view = apply_interaction(self.view, action, self.zoom_range)
        pts_now = self._current_points(new_view)
        specs_now = specs_for_points(pts_now, new_view.zoom, self.label_px)
        # geometry for everything the transition may touch, old labels included
        union_pts = {p.id: p for p in pts_now}
        for pid in self.labeling:
            union_pts.setdefault(pid, self.by_id[pid])
        specs_eval = specs_for_points(list(union_pts.values()), new_view.zoom,
                                      self.label_px)
        prev, dropped = _sanitize_previous(self.labeling, specs_eval)
        new_labeling = session_relabel(
            {pid: slot for pid, slot in prev.items() if pid in specs_now},
            list(specs_now.values()))
        diff = diff_labelings(prev, new_labeling, specs_eval)
        graph = build_movement_graph(diff.movements, specs_eval)
        if self.style == NAIVE:
            plan = plan_naive(diff)
        elif self.style == DAG:
            plan = plan_dag(diff, graph)
        else:
            plan = plan_simultaneous(diff)
        try:
            fas_bound = len(min_feedback_arc_set(graph))
        except ValueError:
            fas_bound = len(plan_dag(diff, graph).broken)
        dependent = {a for e in graph.edges for a in e}
        report = evaluate_plan(plan, specs_eval)
        record = TransitionRecord(
            action=describe_action(action),
            style=self.style,
            moved=len(diff.movements),
            added=len(diff.added),
            removed=len(diff.removed),
            pair_count=report.pair_count,
            total_penalty=report.total_penalty,
            movement_span=plan.movement_span,
            makespan=plan.makespan,
            n_movers=len(diff.movements),
            fas_bound=fas_bound,
            dependent_movements=len(dependent),
            dropped_stale=dropped,
        )
        self.view = new_view
        self.labeling = new_labeling
        return record, plan, report, specs_eval


SCRIPT_NAMES = ("a", "b", "c", "sweep3h")


def get_script(name: str) -> List[Action]:
    """The scripted interaction sequences used by the batch runner."""
    name = name.lower()
    if name == "a":
        return [TimeShift(30), Zoom(1), Pan(0.0, 0.28), TimeShift(5)]
    if name == "b":
        return [TimeShift(5), Pan(0.0, 0.28), Zoom(1), TimeShift(30)]
    if name == "c":
        return [Zoom(1), TimeShift(-5), Pan(-1.7, 0.0), TimeShift(20)]
    if name == "sweep3h":
        return [TimeShift(5) for _ in range(36)]
    raise ValueError(f"unknown script {name!r}")


def run_script(points: Sequence[SpatioPoint], initial: ViewState,
               script: Sequence[Action], style: str,
               label_px: Tuple[float, float] = DEFAULT_LABEL_PX,
               ) -> List[TransitionRecord]:
    if not script:
        raise ValueError("script must be nonempty")
    session = ScenarioSession(points, initial, style, label_px)
    records = []
    for action in script:
        record, _, _, _ = session.step(action)
        records.append(record)
    return records
