"""Overlap-free labelings in the four-position model.

A conflict graph connects candidate positions that cannot coexist (their
rects overlap, or they belong to the same point).  A greedy minimum-degree
maximal independent set picks the labeling; two stability heuristics keep it
calm across updates: previously shown labels are pinned, and a new labeling
replaces the old one only when it is at least 2% larger.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Set, Tuple

from .geometry import LabelSpec, Rect, Slot, candidate_rect, rects_overlap

Candidate = Tuple[str, Slot]
Labeling = Dict[str, Slot]

KEEP_THRESHOLD = 1.02  # adopt the new labeling only when >= 2% larger


@dataclass
class ConflictGraph:
    """Candidate-position conflict graph: 4 vertices per point."""

    nodes: Tuple[Candidate, ...]
    adjacency: Dict[Candidate, Set[Candidate]]
    rects: Dict[Candidate, Rect]

    def degree(self, node: Candidate) -> int:
        return len(self.adjacency[node])

    def neighbors(self, node: Candidate) -> Set[Candidate]:
        return self.adjacency[node]


def _cell_of(x: float, y: float, cell: float) -> Tuple[int, int]:
    return (int(x // cell), int(y // cell))


def build_conflict_graph(specs: Sequence[LabelSpec]) -> ConflictGraph:
    """All four candidates per point; edges join overlapping rects and the
    candidates of one point (a point gets at most one label)."""
    ids = [s.label_id for s in specs]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate point ids")
    nodes: List[Candidate] = []
    rects: Dict[Candidate, Rect] = {}
    adjacency: Dict[Candidate, Set[Candidate]] = {}
    for spec in specs:
        point_nodes = []
        for slot in Slot:
            node = (spec.label_id, slot)
            nodes.append(node)
            rects[node] = candidate_rect(spec, slot)
            adjacency[node] = set()
            point_nodes.append(node)
        for i in range(4):
            for j in range(i + 1, 4):
                adjacency[point_nodes[i]].add(point_nodes[j])
                adjacency[point_nodes[j]].add(point_nodes[i])
    # Spatial hash keeps the pairwise pass near-linear for spread-out points.
    if specs:
        cell = 2.0 * max(max(s.width for s in specs), max(s.height for s in specs))
        buckets: Dict[Tuple[int, int], List[Candidate]] = defaultdict(list)
        for node in nodes:
            r = rects[node]
            x0, y0 = _cell_of(r.min_x, r.min_y, cell)
            x1, y1 = _cell_of(r.max_x, r.max_y, cell)
            for cx in range(x0, x1 + 1):
                for cy in range(y0, y1 + 1):
                    buckets[(cx, cy)].append(node)
        for bucket in buckets.values():
            for i in range(len(bucket)):
                ni = bucket[i]
                for j in range(i + 1, len(bucket)):
                    nj = bucket[j]
                    if ni[0] == nj[0] or nj in adjacency[ni]:
                        continue
                    if rects_overlap(rects[ni], rects[nj]):
                        adjacency[ni].add(nj)
                        adjacency[nj].add(ni)
    return ConflictGraph(tuple(nodes), adjacency, rects)


def _slot_rank(node: Candidate) -> Tuple[str, int]:
    return (node[0], node[1].value)


def greedy_mis(graph: ConflictGraph,
               pinned: Iterable[Candidate] = ()) -> Labeling:
    """Greedy maximal independent set, pinned candidates first.

    Repeatedly selects the residual-minimum-degree vertex not adjacent to the
    chosen set (ties by point id, then slot order) and deletes its closed
    neighborhood.
    """
    pinned = list(pinned)
    for i in range(len(pinned)):
        for j in range(i + 1, len(pinned)):
            if pinned[j] in graph.adjacency.get(pinned[i], set()):
                raise ValueError("pinned candidates conflict")
    chosen: List[Candidate] = []
    alive: Set[Candidate] = set(graph.nodes)
    degree = {node: len(graph.adjacency[node]) for node in graph.nodes}

    def remove_closed(node: Candidate) -> None:
        to_drop = [n for n in graph.adjacency[node] if n in alive]
        if node in alive:
            to_drop.append(node)
        for drop in to_drop:
            alive.discard(drop)
            for nb in graph.adjacency[drop]:
                if nb in alive:
                    degree[nb] -= 1

    for node in pinned:
        if node not in graph.adjacency:
            raise KeyError(f"pinned candidate {node!r} not in graph")
        chosen.append(node)
        remove_closed(node)
    while alive:
        node = min(alive, key=lambda n: (degree[n],) + _slot_rank(n))
        chosen.append(node)
        remove_closed(node)
    return {pid: slot for pid, slot in sorted(chosen, key=_slot_rank)}


def labeling_is_valid(labeling: Labeling, specs: Mapping[str, LabelSpec]) -> bool:
    items = sorted(labeling.items())
    rects = [candidate_rect(specs[pid], slot) for pid, slot in items]
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            if rects_overlap(rects[i], rects[j]):
                return False
    return True


def relabel_stable(prev: Labeling, specs_now: Sequence[LabelSpec]) -> Labeling:
    """Recompute the labeling, keeping previously shown labels pinned.

    If the recomputed set is less than 2% larger than the surviving previous
    labels, keep those instead and only add labels for brand-new points that
    fit without conflicts.
    """
    specs_map = {s.label_id: s for s in specs_now}
    surviving = {pid: slot for pid, slot in prev.items() if pid in specs_map}
    if not labeling_is_valid(surviving, specs_map):
        raise ValueError("previous labeling conflicts on the current points")
    graph = build_conflict_graph(list(specs_now))
    pinned = sorted(surviving.items())
    recomputed = greedy_mis(graph, pinned)
    if len(surviving) and len(recomputed) < KEEP_THRESHOLD * len(surviving):
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
    return recomputed


def mis_is_independent(graph: ConflictGraph, labeling: Labeling) -> bool:
    chosen = {(pid, slot) for pid, slot in labeling.items()}
    return all(not (graph.adjacency[a] & chosen) for a in chosen)


def mis_is_maximal(graph: ConflictGraph, labeling: Labeling) -> bool:
    chosen = {(pid, slot) for pid, slot in labeling.items()}
    for node in graph.nodes:
        if node in chosen:
            continue
        if not (graph.adjacency[node] & chosen):
            return False
    return True


def brute_force_max_independent_set(graph: ConflictGraph) -> int:
    """Exact maximum independent set size; exponential, small inputs only."""
    nodes = list(graph.nodes)
    n = len(nodes)
    if n > 36:
        raise ValueError("instance too large for brute force")
    index = {node: i for i, node in enumerate(nodes)}
    masks = [0] * n
    for i, node in enumerate(nodes):
        for nb in graph.adjacency[node]:
            masks[i] |= 1 << index[nb]
    best = 0

    def extend(i: int, taken: int, count: int) -> None:
        nonlocal best
        if count + (n - i) <= best:
            return
        if i == n:
            best = max(best, count)
            return
        if not (masks[i] & taken):
            extend(i + 1, taken | (1 << i), count + 1)
        extend(i + 1, taken, count)

    extend(0, 0, 0)
    return best
