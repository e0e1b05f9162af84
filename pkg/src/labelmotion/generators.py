"""Seeded random instance generators for tests and randomized suites."""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .geometry import AxisOrder, LabelSpec, Rect, Slot, candidate_rect, rects_overlap
from .planner import Labeling, TransitionDiff, diff_labelings

ALL_SLOTS = tuple(Slot)


def _fits(rect: Rect, placed: List[Rect]) -> bool:
    return all(not rects_overlap(rect, other) for other in placed)


def random_labeling_pair(rng: random.Random, n_points: int,
                         area: float = 6.0,
                         move_prob: float = 0.5,
                         drop_prob: float = 0.15,
                         add_prob: float = 0.15,
                         ) -> Tuple[Dict[str, LabelSpec], Labeling, Labeling]:
    """Two overlap-free labelings over a mostly-shared point set.

    Points get random anchors and slots; the second labeling perturbs slots,
    drops some labels, and adds labels for fresh points.  All placements are
    rejection-tested so both labelings are valid by construction.
    """
    specs: Dict[str, LabelSpec] = {}
    l1: Labeling = {}
    placed1: List[Rect] = []
    i = 0
    attempts = 0
    while len(l1) < n_points and attempts < n_points * 40:
        attempts += 1
        pid = f"p{i}"
        spec = LabelSpec(pid, (rng.uniform(-area, area), rng.uniform(-area, area)), 1.0, 1.0)
        slot = rng.choice(ALL_SLOTS)
        rect = candidate_rect(spec, slot)
        if _fits(rect, placed1):
            specs[pid] = spec
            l1[pid] = slot
            placed1.append(rect)
            i += 1
    l2: Labeling = {}
    placed2: List[Rect] = []
    for pid, slot in l1.items():
        if rng.random() < drop_prob:
            continue
        new_slot = slot
        if rng.random() < move_prob:
            new_slot = rng.choice([s for s in ALL_SLOTS if s is not slot])
        rect = candidate_rect(specs[pid], new_slot)
        if not _fits(rect, placed2):
            rect = candidate_rect(specs[pid], slot)
            if not _fits(rect, placed2):
                continue
            new_slot = slot
        l2[pid] = new_slot
        placed2.append(rect)
    extra = 0
    while extra < n_points and rng.random() < add_prob:
        pid = f"p{i}"
        spec = LabelSpec(pid, (rng.uniform(-area, area), rng.uniform(-area, area)), 1.0, 1.0)
        slot = rng.choice(ALL_SLOTS)
        rect = candidate_rect(spec, slot)
        if _fits(rect, placed2):
            specs[pid] = spec
            l2[pid] = slot
            placed2.append(rect)
            i += 1
        extra += 1
    return specs, l1, l2


def random_diff(rng: random.Random, n_points: int, **kwargs
                ) -> Tuple[Dict[str, LabelSpec], TransitionDiff]:
    specs, l1, l2 = random_labeling_pair(rng, n_points, **kwargs)
    return specs, diff_labelings(l1, l2, specs)


DIAGONAL_PAIRS = ((Slot.TOP_LEFT, Slot.BOTTOM_RIGHT),
                  (Slot.BOTTOM_RIGHT, Slot.TOP_LEFT),
                  (Slot.TOP_RIGHT, Slot.BOTTOM_LEFT),
                  (Slot.BOTTOM_LEFT, Slot.TOP_RIGHT))


def random_weighted_instance(rng: random.Random, n_diagonals: int,
                             n_stationary: Optional[int] = None,
                             area: Optional[float] = None,
                             ) -> Tuple[Dict[str, LabelSpec], Labeling, Labeling]:
    """Instance with exactly `n_diagonals` diagonal movers plus stationary
    labels, random weights, both labelings valid.  The area scales with the
    diagonal count so that routing choices actually interact."""
    if area is None:
        area = 1.2 * max(2, n_diagonals)
    if n_stationary is None:
        n_stationary = rng.randint(0, n_diagonals)
    specs: Dict[str, LabelSpec] = {}
    l1: Labeling = {}
    l2: Labeling = {}
    placed1: List[Rect] = []
    placed2: List[Rect] = []
    made = 0
    tries = 0
    while made < n_diagonals and tries < 500:
        tries += 1
        pid = f"d{made}"
        spec = LabelSpec(pid, (rng.uniform(-area, area), rng.uniform(-area, area)),
                         1.0, 1.0, weight=rng.choice([1.0, 1.0, 2.0, 3.0]))
        frm, to = rng.choice(DIAGONAL_PAIRS)
        r1 = candidate_rect(spec, frm)
        r2 = candidate_rect(spec, to)
        if _fits(r1, placed1) and _fits(r2, placed2):
            specs[pid] = spec
            l1[pid] = frm
            l2[pid] = to
            placed1.append(r1)
            placed2.append(r2)
            made += 1
    made = 0
    tries = 0
    while made < n_stationary and tries < 300:
        tries += 1
        pid = f"s{made}"
        spec = LabelSpec(pid, (rng.uniform(-area, area), rng.uniform(-area, area)),
                         1.0, 1.0, weight=rng.choice([1.0, 2.0]))
        slot = rng.choice(ALL_SLOTS)
        rect = candidate_rect(spec, slot)
        if _fits(rect, placed1) and _fits(rect, placed2):
            specs[pid] = spec
            l1[pid] = slot
            l2[pid] = slot
            placed1.append(rect)
            placed2.append(rect)
            made += 1
    return specs, l1, l2


def random_single_mover_instance(rng: random.Random,
                                 max_stationary: int = 10,
                                 ) -> Tuple[Dict[str, LabelSpec], Labeling, Labeling, AxisOrder]:
    """One moving label plus stationary company, both labelings valid.

    Stationary labels cluster near the mover so traversed-corner blockers
    (the single-movement worst case) occur frequently.
    """
    mover = LabelSpec("mover", (0.0, 0.0), 1.0, 1.0)
    from_slot, to_slot = rng.sample(ALL_SLOTS, 2)
    order = rng.choice(tuple(AxisOrder))
    specs = {"mover": mover}
    start = candidate_rect(mover, from_slot)
    end = candidate_rect(mover, to_slot)
    l1: Labeling = {"mover": from_slot}
    l2: Labeling = {"mover": to_slot}
    placed = [start, end]
    n_stationary = rng.randint(0, max_stationary)
    tries = 0
    while len(specs) - 1 < n_stationary and tries < 200:
        tries += 1
        pid = f"s{len(specs)}"
        spec = LabelSpec(pid, (rng.uniform(-3, 3), rng.uniform(-3, 3)), 1.0, 1.0)
        slot = rng.choice(ALL_SLOTS)
        rect = candidate_rect(spec, slot)
        if _fits(rect, placed):
            specs[pid] = spec
            l1[pid] = slot
            l2[pid] = slot
            placed.append(rect)
    return specs, l1, l2, order
