"""Rectangle and trajectory geometry for the four-position label model.

Labels are axis-aligned rectangles anchored at a point; each point owns four
candidate positions (the rect sits in one quadrant around the anchor).  During
a transition a label slides between candidates along axis-aligned unit-speed
legs.  Overlap is always open-interior: shared edges and corners do not count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

# Tolerance for interval-boundary comparisons; "strictly inside" means
# penetration greater than EPS.
EPS = 1e-9


class Slot(Enum):
    """The four candidate positions of a point's label.

    The value order (TL, TR, BL, BR) is also the deterministic tie-break
    order used throughout the package.
    """

    TOP_LEFT = 0
    TOP_RIGHT = 1
    BOTTOM_LEFT = 2
    BOTTOM_RIGHT = 3

    @property
    def short(self) -> str:
        return {"TOP_LEFT": "TL", "TOP_RIGHT": "TR",
                "BOTTOM_LEFT": "BL", "BOTTOM_RIGHT": "BR"}[self.name]

    @classmethod
    def from_name(cls, name: str) -> "Slot":
        key = name.strip().upper().replace("-", "_")
        aliases = {"TL": cls.TOP_LEFT, "TR": cls.TOP_RIGHT,
                   "BL": cls.BOTTOM_LEFT, "BR": cls.BOTTOM_RIGHT}
        if key in aliases:
            return aliases[key]
        return cls[key]


class AxisOrder(Enum):
    """Leg order for diagonal movements (which corner gets traversed)."""

    HORIZONTAL_FIRST = 0
    VERTICAL_FIRST = 1


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in map units, width/height > 0."""

    min_x: float
    min_y: float
    width: float
    height: float

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("rect width and height must be positive")

    @property
    def max_x(self) -> float:
        return self.min_x + self.width

    @property
    def max_y(self) -> float:
        return self.min_y + self.height

    @property
    def center(self) -> Tuple[float, float]:
        return (self.min_x + self.width / 2.0, self.min_y + self.height / 2.0)

    def translated(self, dx: float, dy: float) -> "Rect":
        return Rect(self.min_x + dx, self.min_y + dy, self.width, self.height)

    def contains_point(self, x: float, y: float) -> bool:
        """Closed containment (boundary points count)."""
        return (self.min_x <= x <= self.max_x) and (self.min_y <= y <= self.max_y)


def rects_overlap(a: Rect, b: Rect) -> bool:
    """True iff the open interiors intersect (contact within EPS is not overlap)."""
    return (min(a.max_x, b.max_x) - max(a.min_x, b.min_x) > EPS
            and min(a.max_y, b.max_y) - max(a.min_y, b.min_y) > EPS)


@dataclass(frozen=True)
class LabelSpec:
    """Geometry of one point's label: anchor plus the shared label size."""

    label_id: str
    anchor: Tuple[float, float]
    width: float
    height: float
    weight: float = 1.0
    text: Optional[str] = None

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise ValueError("label weight must be non-negative")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("label size must be positive")


def candidate_rect(spec: LabelSpec, slot: Slot) -> Rect:
    """Rect of the given candidate slot; the anchor is a corner of the result.

    The four candidates tile a 2w x 2h block centered on the anchor.
    """
    ax, ay = spec.anchor
    w, h = spec.width, spec.height
    if slot is Slot.TOP_LEFT:
        return Rect(ax - w, ay, w, h)
    if slot is Slot.TOP_RIGHT:
        return Rect(ax, ay, w, h)
    if slot is Slot.BOTTOM_LEFT:
        return Rect(ax - w, ay - h, w, h)
    return Rect(ax, ay - h, w, h)


def slots_adjacent(a: Slot, b: Slot) -> bool:
    """True when the two slots differ in exactly one axis (one-leg move)."""
    if a is b:
        return False
    return not slots_diagonal(a, b)


def slots_diagonal(a: Slot, b: Slot) -> bool:
    return {a, b} in ({Slot.TOP_LEFT, Slot.BOTTOM_RIGHT},
                      {Slot.TOP_RIGHT, Slot.BOTTOM_LEFT})


@dataclass(frozen=True)
class Trajectory:
    """Piecewise axis-aligned unit-speed path of a label between slots.

    Each leg lasts exactly one time unit: horizontal legs travel the label
    width, vertical legs the label height.  Positions outside the active
    window clamp to the first/last rect, so a trajectory is defined for all t.
    """

    start_rect: Rect
    legs: Tuple[Tuple[float, float], ...]  # per-leg velocity (dx, dy) over 1 unit
    start_time: float = 0.0

    @property
    def duration(self) -> float:
        return float(len(self.legs))

    @property
    def end_time(self) -> float:
        return self.start_time + self.duration

    @property
    def end_rect(self) -> Rect:
        dx = sum(v[0] for v in self.legs)
        dy = sum(v[1] for v in self.legs)
        return self.start_rect.translated(dx, dy)

    def leg_rects(self) -> List[Rect]:
        """Rects at leg boundaries: start, intermediates, end."""
        out = [self.start_rect]
        for vx, vy in self.legs:
            out.append(out[-1].translated(vx, vy))
        return out

    def shifted(self, start_time: float) -> "Trajectory":
        return Trajectory(self.start_rect, self.legs, start_time)


def make_trajectory(spec: LabelSpec, from_slot: Slot, to_slot: Slot,
                    order: AxisOrder = AxisOrder.HORIZONTAL_FIRST,
                    start_time: float = 0.0) -> Trajectory:
    """Trajectory between two candidate slots of the same point.

    Adjacent slots give one leg; diagonal slots give two legs whose order
    follows `order` (the traversed corner is the intermediate candidate).
    """
    if from_slot is to_slot:
        raise ValueError("null movement")
    start = candidate_rect(spec, from_slot)
    end = candidate_rect(spec, to_slot)
    dx = end.min_x - start.min_x
    dy = end.min_y - start.min_y
    if dx != 0 and dy != 0:
        if order is AxisOrder.HORIZONTAL_FIRST:
            legs = ((dx, 0.0), (0.0, dy))
        else:
            legs = ((0.0, dy), (dx, 0.0))
    elif dx != 0:
        legs = ((dx, 0.0),)
    else:
        legs = ((0.0, dy),)
    return Trajectory(start, legs, start_time)


def rect_at(traj: Trajectory, t: float) -> Rect:
    """Position at time t, clamped to the start/end rects outside the window."""
    rel = t - traj.start_time
    if rel <= 0:
        return traj.start_rect
    x, y = traj.start_rect.min_x, traj.start_rect.min_y
    for vx, vy in traj.legs:
        if rel <= 0:
            break
        step = min(rel, 1.0)
        x += vx * step
        y += vy * step
        rel -= 1.0
    return Rect(x, y, traj.start_rect.width, traj.start_rect.height)


Moving = Union[Trajectory, Rect]

# A motion segment: (t0, t1, x0, y0, vx, vy) with position linear in t.
_Segment = Tuple[float, float, float, float, float, float]


def _size_of(obj: Moving) -> Tuple[float, float]:
    if isinstance(obj, Rect):
        return obj.width, obj.height
    return obj.start_rect.width, obj.start_rect.height


def _segments(obj: Moving, t0: float, t1: float) -> List[_Segment]:
    """Cover [t0, t1] with constant-velocity segments (clamping included)."""
    if isinstance(obj, Rect):
        return [(t0, t1, obj.min_x, obj.min_y, 0.0, 0.0)]
    segs: List[_Segment] = []
    cursor = t0
    x, y = obj.start_rect.min_x, obj.start_rect.min_y
    if cursor < obj.start_time:
        hi = min(t1, obj.start_time)
        segs.append((cursor, hi, x, y, 0.0, 0.0))
        cursor = hi
    leg_start = obj.start_time
    for vx, vy in obj.legs:
        leg_end = leg_start + 1.0
        if cursor >= t1:
            break
        if leg_end > cursor and leg_start < t1:
            lo = max(cursor, leg_start)
            hi = min(t1, leg_end)
            x0 = x + vx * (lo - leg_start)
            y0 = y + vy * (lo - leg_start)
            segs.append((lo, hi, x0, y0, vx, vy))
            cursor = hi
        x += vx
        y += vy
        leg_start = leg_end
    if cursor < t1:
        segs.append((cursor, t1, x, y, 0.0, 0.0))
    return segs


def _axis_interval(c0: float, v: float, bound: float,
                   lo: float, hi: float) -> Optional[Tuple[float, float]]:
    """Solve |c0 + v*(t - lo)| < bound on [lo, hi]."""
    if bound <= 0:
        return None
    if v == 0.0:
        return (lo, hi) if abs(c0) < bound else None
    ta = lo + (-bound - c0) / v
    tb = lo + (bound - c0) / v
    if ta > tb:
        ta, tb = tb, ta
    s, e = max(lo, ta), min(hi, tb)
    if e - s > 0:
        return (s, e)
    return None


def overlap_intervals(a: Moving, b: Moving, t0: float, t1: float) -> List[Tuple[float, float]]:
    """All maximal time intervals in [t0, t1] where open interiors intersect.

    Exact: the horizon is split at leg boundaries of both objects; on each
    piece the center distance is linear per axis, so the overlap condition
    |dx| < (wa+wb)/2 and |dy| < (ha+hb)/2 reduces to linear inequalities.
    """
    if t1 - t0 <= EPS:
        return []
    wa, ha = _size_of(a)
    wb, hb = _size_of(b)
    bx = (wa + wb) / 2.0 - EPS
    by = (ha + hb) / 2.0 - EPS
    segs_a = _segments(a, t0, t1)
    segs_b = _segments(b, t0, t1)
    out: List[Tuple[float, float]] = []
    ia = ib = 0
    while ia < len(segs_a) and ib < len(segs_b):
        sa = segs_a[ia]
        sb = segs_b[ib]
        lo = max(sa[0], sb[0])
        hi = min(sa[1], sb[1])
        if hi - lo > 0:
            # Center distance at lo and its velocity on this piece.
            cx = ((sa[2] + sa[4] * (lo - sa[0]) + wa / 2.0)
                  - (sb[2] + sb[4] * (lo - sb[0]) + wb / 2.0))
            cy = ((sa[3] + sa[5] * (lo - sa[0]) + ha / 2.0)
                  - (sb[3] + sb[5] * (lo - sb[0]) + hb / 2.0))
            vx = sa[4] - sb[4]
            vy = sa[5] - sb[5]
            wx = _axis_interval(cx, vx, bx, lo, hi)
            if wx is not None:
                wy = _axis_interval(cy, vy, by, lo, hi)
                if wy is not None:
                    s = max(wx[0], wy[0])
                    e = min(wx[1], wy[1])
                    if e - s > EPS:
                        if out and s - out[-1][1] <= EPS:
                            out[-1] = (out[-1][0], max(out[-1][1], e))
                        else:
                            out.append((s, e))
        if sa[1] <= sb[1]:
            ia += 1
        else:
            ib += 1
    return out


def swept_overlap(a: Moving, b: Moving,
                  horizon: Tuple[float, float]) -> Optional[Tuple[float, float]]:
    """Earliest maximal overlap interval within the horizon, or None."""
    t0, t1 = horizon
    if not t0 < t1:
        raise ValueError("horizon must satisfy t0 < t1")
    intervals = overlap_intervals(a, b, t0, t1)
    return intervals[0] if intervals else None


def rect_overlap_bound(widths: Sequence[float], heights: Sequence[float]) -> int:
    """Worst-case overlaps of one moving label among stationary rectangles.

    ceil(max_w/min_w) * ceil(max_h/min_h); reduces to 1 for uniform sizes.
    """
    if not widths or not heights:
        raise ValueError("widths and heights must be nonempty")
    if min(widths) <= 0 or min(heights) <= 0:
        raise ValueError("sizes must be positive")
    rx = max(widths) / min(widths)
    ry = max(heights) / min(heights)
    return math.ceil(rx - EPS) * math.ceil(ry - EPS)


@dataclass(frozen=True)
class OverlapEvent:
    """One overlapping pair with its merged time interval and penalty."""

    id_a: str
    id_b: str
    t_start: float
    t_end: float
    penalty: float = 1.0

    def __post_init__(self) -> None:
        if not self.t_start < self.t_end:
            raise ValueError("event interval must have positive length")
        if self.penalty < 0:
            raise ValueError("penalty must be non-negative")

    @property
    def pair(self) -> Tuple[str, str]:
        return tuple(sorted((self.id_a, self.id_b)))  # type: ignore[return-value]
