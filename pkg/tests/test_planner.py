import random

import pytest

from labelmotion.geometry import AxisOrder, LabelSpec, Rect, Slot, candidate_rect
from labelmotion.planner import (
    DAG,
    NAIVE,
    SIMULTANEOUS,
    Movement,
    MovementGraph,
    build_movement_graph,
    check_bound,
    diff_labelings,
    evaluate_plan,
    exhaustive_best_order,
    min_feedback_arc_set,
    plan_dag,
    plan_naive,
    plan_simultaneous,
    plan_to_json,
)
from labelmotion.generators import random_diff, random_single_mover_instance


def uspec(pid, x, y):
    return LabelSpec(pid, (float(x), float(y)), 1.0, 1.0)


def shift_chain_instance(k):
    """k movers in a row, each moving onto the next one's start position."""
    specs = {f"m{i}": uspec(f"m{i}", i, 0) for i in range(1, k + 1)}
    l1 = {f"m{i}": Slot.TOP_LEFT for i in range(1, k + 1)}
    l2 = {f"m{i}": Slot.TOP_RIGHT for i in range(1, k + 1)}
    return specs, diff_labelings(l1, l2, specs)


def swap_instance():
    """Two adjacent movers exchanging places: a 2-cycle in the movement graph."""
    specs = {"m1": uspec("m1", 0, 0), "m2": uspec("m2", 0, 0.5)}
    l1 = {"m1": Slot.TOP_LEFT, "m2": Slot.TOP_RIGHT}
    l2 = {"m1": Slot.TOP_RIGHT, "m2": Slot.TOP_LEFT}
    return specs, diff_labelings(l1, l2, specs)


def lemma1_instance():
    """Diagonal mover plus one stationary blocker on the traversed corner."""
    specs = {"mover": uspec("mover", 0, 0), "blocker": uspec("blocker", -0.5, -0.5)}
    l1 = {"mover": Slot.TOP_LEFT, "blocker": Slot.BOTTOM_LEFT}
    l2 = {"mover": Slot.BOTTOM_RIGHT, "blocker": Slot.BOTTOM_LEFT}
    return specs, diff_labelings(l1, l2, specs)


# --- diff_labelings ---------------------------------------------------------

def test_diff_identity():
    specs = {"p1": uspec("p1", 0, 0)}
    l1 = {"p1": Slot.TOP_RIGHT}
    d = diff_labelings(l1, dict(l1), specs)
    assert d.removed == () and d.added == () and d.movements == ()


def test_diff_addition():
    specs = {"p1": uspec("p1", 0, 0), "p2": uspec("p2", 4, 0)}
    d = diff_labelings({"p1": Slot.TOP_RIGHT},
                       {"p1": Slot.TOP_RIGHT, "p2": Slot.TOP_LEFT}, specs)
    assert d.removed == () and d.added == ("p2",) and d.movements == ()


def test_diff_movement():
    specs = {"p1": uspec("p1", 0, 0)}
    d = diff_labelings({"p1": Slot.TOP_LEFT}, {"p1": Slot.BOTTOM_RIGHT}, specs)
    assert len(d.movements) == 1
    m = d.movements[0]
    assert (m.from_slot, m.to_slot) == (Slot.TOP_LEFT, Slot.BOTTOM_RIGHT)


def test_diff_rejects_overlapping_labeling():
    specs = {"p1": uspec("p1", 0, 0), "p2": uspec("p2", 0.5, 0)}
    bad = {"p1": Slot.TOP_RIGHT, "p2": Slot.TOP_RIGHT}
    with pytest.raises(ValueError, match="not overlap-free"):
        diff_labelings(bad, bad, specs)


# --- build_movement_graph ---------------------------------------------------

def test_graph_single_movement():
    specs = {"m1": uspec("m1", 0, 0)}
    g = build_movement_graph([Movement("m1", Slot.TOP_LEFT, Slot.TOP_RIGHT)], specs)
    assert g.vertices == ("m1",) and g.edges == set()


def test_graph_end_over_start_edge():
    specs = {"m1": uspec("m1", 0, 0), "m2": uspec("m2", 1.5, 0)}
    movements = [Movement("m1", Slot.TOP_LEFT, Slot.TOP_RIGHT),
                 Movement("m2", Slot.TOP_LEFT, Slot.TOP_RIGHT)]
    assert candidate_rect(specs["m1"], Slot.TOP_RIGHT) == Rect(0, 0, 1, 1)
    assert candidate_rect(specs["m2"], Slot.TOP_LEFT) == Rect(0.5, 0, 1, 1)
    g = build_movement_graph(movements, specs)
    assert g.edges == {("m2", "m1")}


def test_graph_two_cycle_swap():
    specs, diff = swap_instance()
    g = build_movement_graph(diff.movements, specs)
    assert g.edges == {("m1", "m2"), ("m2", "m1")}
    assert g.has_cycle()


def test_graph_rejects_duplicate_labels():
    specs = {"m1": uspec("m1", 0, 0)}
    moves = [Movement("m1", Slot.TOP_LEFT, Slot.TOP_RIGHT),
             Movement("m1", Slot.TOP_RIGHT, Slot.TOP_LEFT)]
    with pytest.raises(ValueError):
        build_movement_graph(moves, specs)


# --- min_feedback_arc_set ---------------------------------------------------

def test_fas_acyclic():
    g = MovementGraph(("a", "b", "c"), {("a", "b"), ("b", "c")})
    assert min_feedback_arc_set(g) == set()


def test_fas_three_cycle():
    g = MovementGraph(("a", "b", "c"), {("a", "b"), ("b", "c"), ("c", "a")})
    fas = min_feedback_arc_set(g)
    assert len(fas) == 1 and fas <= g.edges


def test_fas_two_disjoint_two_cycles():
    g = MovementGraph(("a", "b", "c", "d"),
                      {("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")})
    assert len(min_feedback_arc_set(g)) == 2


def test_fas_limit():
    verts = tuple(f"v{i}" for i in range(11))
    g = MovementGraph(verts, set())
    with pytest.raises(ValueError, match="use heuristic"):
        min_feedback_arc_set(g)


# --- plan_naive -------------------------------------------------------------

def test_naive_no_movements_makespan():
    specs = {"p1": uspec("p1", 0, 0), "p2": uspec("p2", 4, 4)}
    d = diff_labelings({"p1": Slot.TOP_LEFT}, {"p2": Slot.TOP_LEFT}, specs)
    plan = plan_naive(d)
    assert plan.movement_span == 0.0
    assert plan.makespan == 2.0  # one removal phase + one addition phase


def test_naive_four_adjacent_movements_span():
    specs, diff = shift_chain_instance(4)
    plan = plan_naive(diff)
    assert plan.movement_span == 4.0


def test_naive_shift_chain_orders():
    specs, diff = shift_chain_instance(5)
    ids = [m.label_id for m in diff.movements]
    front = evaluate_plan(plan_naive(diff, ids), specs)
    back = evaluate_plan(plan_naive(diff, ids[::-1]), specs)
    assert front.pair_count == 4
    assert back.pair_count == 0


def test_naive_rejects_bad_order():
    specs, diff = shift_chain_instance(3)
    with pytest.raises(ValueError):
        plan_naive(diff, ["m1", "m2"])


# --- plan_dag ---------------------------------------------------------------

def test_dag_acyclic_chain_schedule():
    specs = {"m1": uspec("m1", 0, 0), "m2": uspec("m2", 1.5, 0)}
    l1 = {"m1": Slot.TOP_LEFT, "m2": Slot.TOP_LEFT}
    l2 = {"m1": Slot.TOP_RIGHT, "m2": Slot.TOP_RIGHT}
    diff = diff_labelings(l1, l2, specs)
    g = build_movement_graph(diff.movements, specs)
    plan = plan_dag(diff, g)
    starts = {m.label_id: t for m, t in plan.scheduled}
    assert starts == {"m2": 0.0, "m1": 1.0}
    assert evaluate_plan(plan, specs).pair_count == 0


def test_dag_independent_movements_parallel():
    specs = {"m1": uspec("m1", 0, 0), "m2": uspec("m2", 10, 10)}
    l1 = {"m1": Slot.TOP_LEFT, "m2": Slot.TOP_LEFT}
    l2 = {"m1": Slot.TOP_RIGHT, "m2": Slot.TOP_RIGHT}
    diff = diff_labelings(l1, l2, specs)
    g = build_movement_graph(diff.movements, specs)
    plan = plan_dag(diff, g)
    assert all(t == 0.0 for _, t in plan.scheduled)
    assert plan.movement_span == 1.0


def test_dag_two_cycle_swap_one_overlap():
    specs, diff = swap_instance()
    g = build_movement_graph(diff.movements, specs)
    plan = plan_dag(diff, g)
    assert plan.broken == ("m1",)
    report = evaluate_plan(plan, specs)
    assert report.pair_count == 1
    # an exhaustive consecutive search confirms one overlap is optimal
    _, best = exhaustive_best_order(diff, specs)
    assert best == 1


# --- plan_simultaneous ------------------------------------------------------

def test_simultaneous_shift_chain():
    specs, diff = shift_chain_instance(5)
    plan = plan_simultaneous(diff)
    assert plan.movement_span == 1.0
    assert evaluate_plan(plan, specs).pair_count == 0


def test_simultaneous_single_diagonal():
    specs = {"m1": uspec("m1", 0, 0)}
    diff = diff_labelings({"m1": Slot.TOP_LEFT}, {"m1": Slot.BOTTOM_RIGHT}, specs)
    plan = plan_simultaneous(diff)
    assert plan.movement_span == 2.0
    assert evaluate_plan(plan, specs).pair_count == 0


def test_simultaneous_direction_override():
    specs, diff = lemma1_instance()
    via_corner = plan_simultaneous(diff, AxisOrder.VERTICAL_FIRST)
    assert evaluate_plan(via_corner, specs).pair_count == 1
    around = plan_simultaneous(diff, AxisOrder.HORIZONTAL_FIRST)
    assert evaluate_plan(around, specs).pair_count == 0
    overridden = plan_simultaneous(diff, AxisOrder.HORIZONTAL_FIRST,
                                   {"mover": AxisOrder.VERTICAL_FIRST})
    assert evaluate_plan(overridden, specs).pair_count == 1


# --- evaluate_plan ----------------------------------------------------------

def test_evaluate_empty_diff():
    specs = {"p1": uspec("p1", 0, 0)}
    l1 = {"p1": Slot.TOP_LEFT}
    diff = diff_labelings(l1, dict(l1), specs)
    plan = plan_simultaneous(diff)
    report = evaluate_plan(plan, specs)
    assert report.pair_count == 0 and report.makespan == 0.0


def test_evaluate_lemma1_fixture():
    specs, diff = lemma1_instance()
    plan = plan_simultaneous(diff, AxisOrder.VERTICAL_FIRST)
    report = evaluate_plan(plan, specs)
    assert report.pair_count == 1
    event = report.events[0]
    assert event.pair == ("blocker", "mover")
    assert event.t_start == pytest.approx(0.5, abs=1e-6)
    assert event.t_end == pytest.approx(1.5, abs=1e-6)


def test_evaluate_merges_episodes_per_pair():
    # Mover passes a blocker twice is impossible here, but removal+mover
    # phases must still produce at most one event per unordered pair.
    specs, diff = lemma1_instance()
    plan = plan_simultaneous(diff, AxisOrder.VERTICAL_FIRST)
    report = evaluate_plan(plan, specs)
    pairs = [e.pair for e in report.events]
    assert len(pairs) == len(set(pairs))


def test_evaluate_is_input_order_invariant():
    specs, diff = lemma1_instance()
    plan = plan_simultaneous(diff, AxisOrder.VERTICAL_FIRST)
    r1 = evaluate_plan(plan, specs)
    r2 = evaluate_plan(plan, dict(reversed(list(specs.items()))))
    assert [e.pair for e in r1.events] == [e.pair for e in r2.events]


# --- check_bound ------------------------------------------------------------

def test_check_bound_examples():
    from labelmotion.planner import OverlapReport

    def rep(count):
        return OverlapReport((), count, float(count), 1.0)

    assert check_bound(rep(3), NAIVE, 2)
    assert check_bound(rep(9), DAG, 8, 1)
    assert not check_bound(rep(10), DAG, 8, 1)
    assert not check_bound(rep(7), SIMULTANEOUS, 1)
    with pytest.raises(ValueError):
        check_bound(rep(0), "bogus", 1)


# --- invariants over random instances ---------------------------------------

def test_random_instances_bounds_and_monotonicity():
    rng = random.Random(42)
    for _ in range(60):
        specs, diff = random_diff(rng, rng.randint(2, 8))
        graph = build_movement_graph(diff.movements, specs)
        naive = plan_naive(diff)
        dag = plan_dag(diff, graph)
        simul = plan_simultaneous(diff)
        n = len(diff.movements)
        try:
            m = len(min_feedback_arc_set(graph))
        except ValueError:
            m = len(dag.broken)
        r_naive = evaluate_plan(naive, specs)
        r_dag = evaluate_plan(dag, specs)
        r_simul = evaluate_plan(simul, specs)
        assert check_bound(r_naive, NAIVE, n)
        assert check_bound(r_dag, DAG, n, max(m, len(dag.broken)))
        assert check_bound(r_simul, SIMULTANEOUS, n)
        assert simul.makespan <= dag.makespan + 1e-9
        assert dag.makespan <= naive.makespan + 1e-9
        for rep in (r_naive, r_dag, r_simul):
            stationary = set(diff.stationary)
            for e in rep.events:
                assert not (e.id_a in stationary and e.id_b in stationary)


def test_dag_acyclic_graph_bounded_by_n():
    rng = random.Random(99)
    checked = 0
    for _ in range(80):
        specs, diff = random_diff(rng, rng.randint(2, 7))
        graph = build_movement_graph(diff.movements, specs)
        if graph.has_cycle():
            continue
        plan = plan_dag(diff, graph)
        report = evaluate_plan(plan, specs)
        assert report.pair_count <= len(diff.movements)
        checked += 1
    assert checked > 10


def test_single_mover_never_exceeds_one_overlap():
    rng = random.Random(7)
    for _ in range(100):
        specs, l1, l2, order = random_single_mover_instance(rng, max_stationary=6)
        diff = diff_labelings(l1, l2, specs)
        plan = plan_simultaneous(diff, order)
        assert evaluate_plan(plan, specs).pair_count <= 1


def test_plan_boundary_labelings():
    # At t=0 the rendered labeling is the source; at t=makespan the target.
    rng = random.Random(17)
    from labelmotion.geometry import rect_at

    for _ in range(20):
        specs, diff = random_diff(rng, rng.randint(2, 6))
        for plan in (plan_naive(diff), plan_simultaneous(diff)):
            assert dict(plan.source) == dict(diff.source)
            assert dict(plan.target) == dict(diff.target)
            for movement, start in plan.scheduled:
                traj = movement.trajectory(specs[movement.label_id], start)
                assert rect_at(traj, 0.0) == candidate_rect(
                    specs[movement.label_id], plan.source[movement.label_id])
                assert rect_at(traj, plan.makespan) == candidate_rect(
                    specs[movement.label_id], plan.target[movement.label_id])


# --- plan serialization -----------------------------------------------------

def test_plan_json_shape():
    import json

    specs, diff = lemma1_instance()
    plan = plan_simultaneous(diff, AxisOrder.VERTICAL_FIRST)
    doc = plan_to_json(plan, specs)
    json.dumps(doc)  # must be serializable
    assert doc["version"] == 1
    assert doc["style"] == SIMULTANEOUS
    assert doc["pair_count"] == 1
    mv = doc["movements"][0]
    assert mv["label_id"] == "mover"
    assert len(mv["legs"]) == 2
    times = [kf[0] for kf in mv["keyframes"]]
    assert times == sorted(times)
    assert times[0] == 0.0 and times[-1] == pytest.approx(plan.makespan)
    # keyframes include exact leg endpoints
    assert any(t == pytest.approx(1.0) for t in times)
    # 0.1 resolution
    assert max(b - a for a, b in zip(times, times[1:])) <= 0.1 + 1e-9
