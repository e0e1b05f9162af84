"""Batch entry point: scenario simulation, fixture verification, weighted
solving, and plan export.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from pathlib import Path
from typing import List, Optional

from .dataset import DEFAULT_EPOCH, load_points, synthetic_points
from .files import load_labeling_file, load_weighted_instance
from .fixtures import FIXTURE_NAMES, parse_fixture_id, verify_fixture
from .geometry import AxisOrder
from .planner import (
    DAG,
    NAIVE,
    SIMULTANEOUS,
    build_movement_graph,
    diff_labelings,
    evaluate_plan,
    plan_dag,
    plan_naive,
    plan_simultaneous,
    plan_to_json,
)
from .scenario import ViewState, aggregate_metrics, get_script, run_script
from .weighted import clause_gadget, solve_directions_exact, solve_directions_heuristic

STYLE_ALIASES = {"naive": NAIVE, "dag": DAG, "simul": SIMULTANEOUS,
                 "simultaneous": SIMULTANEOUS}

METRIC_COLUMNS = ["style", "transitions", "overlaps_avg", "overlaps_total",
                  "overlaps_max", "duration_max_s", "duration_avg_s",
                  "movement_span_max_s", "movement_span_avg_s",
                  "moved", "added", "removed"]


def _style(value: str) -> str:
    try:
        return STYLE_ALIASES[value.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown style {value!r}")


def _parse_center(value: str):
    lon, lat = value.split(",")
    return float(lon), float(lat)


def cmd_simulate(args) -> int:
    from datetime import timedelta

    if args.dataset == "synthetic":
        points = synthetic_points(args.seed, n_points=args.points,
                                  center=args.center)
    else:
        try:
            points = load_points(args.dataset)
        except OSError as exc:
            print(f"error: cannot read dataset: {exc}", file=sys.stderr)
            return 2
    try:
        script = get_script(args.script)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    view = ViewState(args.center[0], args.center[1], args.zoom,
                     DEFAULT_EPOCH + timedelta(hours=args.start_hours))
    records = run_script(points, view, script, args.style)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    log_path = out / f"transitions_{args.style}.json"
    with open(log_path, "w", encoding="utf-8") as fh:
        json.dump([dataclasses.asdict(r) for r in records], fh, indent=2,
                  sort_keys=True)
    agg = aggregate_metrics(records)
    csv_path = out / f"metrics_{args.style}.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(METRIC_COLUMNS)
        writer.writerow([agg.style, agg.transitions,
                         f"{agg.overlaps_avg:.4f}", agg.overlaps_total,
                         agg.overlaps_max, f"{agg.duration_max:.2f}",
                         f"{agg.duration_avg:.4f}",
                         f"{agg.movement_span_max:.2f}",
                         f"{agg.movement_span_avg:.4f}",
                         agg.moved, agg.added, agg.removed])
    print(f"wrote {log_path} and {csv_path}")
    return 0


def cmd_verify(args) -> int:
    try:
        name, param = parse_fixture_id(args.fixture)
        report = verify_fixture(name, param)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for check in report.checks:
        mark = "ok " if check.passed else "FAIL"
        print(f"[{mark}] {report.fixture}: {check.name}: "
              f"expected {check.expected}, got {check.actual}")
    for line in report.events:
        print(f"    overlap {line}")
    return 0 if report.passed else 1


def cmd_solve(args) -> int:
    try:
        if args.input == "fixture:clause_gadget":
            inst = clause_gadget().instance
            if args.k is not None:
                inst = dataclasses.replace(inst, k=args.k)
        else:
            inst = load_weighted_instance(args.input, k=args.k)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot load instance: {exc}", file=sys.stderr)
        return 2
    try:
        if args.mode == "exact":
            assignment, w = solve_directions_exact(inst)
        else:
            assignment, w = solve_directions_heuristic(inst)
    except ValueError as exc:
        print(f"error: {exc}; try --mode heuristic", file=sys.stderr)
        return 2
    for pid in sorted(assignment):
        route = ("horizontal-first"
                 if assignment[pid] is AxisOrder.HORIZONTAL_FIRST
                 else "vertical-first")
        print(f"{pid}: {route}")
    decision = "YES" if w <= inst.k + 1e-12 else "NO"
    print(f"W = {w:g}")
    print(f"k = {inst.k:g} -> {decision}")
    return 0


def cmd_export_plan(args) -> int:
    try:
        specs1, l1 = load_labeling_file(args.source)
        specs2, l2 = load_labeling_file(args.target)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: bad labeling file: {exc}", file=sys.stderr)
        return 2
    specs = dict(specs1)
    specs.update(specs2)
    try:
        diff = diff_labelings(l1, l2, specs)
        if args.style == NAIVE:
            plan = plan_naive(diff)
        elif args.style == DAG:
            plan = plan_dag(diff, build_movement_graph(diff.movements, specs))
        else:
            plan = plan_simultaneous(diff)
        doc = plan_to_json(plan, specs, evaluate_plan(plan, specs))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="labelmotion",
        description="Plan and evaluate animated transitions between map labelings.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scripted scenario and write metrics")
    sim.add_argument("--dataset", required=True,
                     help="points file (.csv/.json) or 'synthetic'")
    sim.add_argument("--script", required=True, choices=["a", "b", "c", "sweep3h"])
    sim.add_argument("--style", required=True, type=_style)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True)
    sim.add_argument("--points", type=int, default=300)
    sim.add_argument("--center", type=_parse_center, default=(14.45, 41.30),
                     metavar="LON,LAT")
    sim.add_argument("--zoom", type=int, default=7)
    sim.add_argument("--start-hours", type=float, default=3.0,
                     help="initial time of interest, hours after the epoch")
    sim.set_defaults(func=cmd_simulate)

    ver = sub.add_parser("verify", help="check a reference fixture's exact counts")
    ver.add_argument("--fixture", required=True,
                     help="one of %s; parameterized like shift_chain(5)"
                     % ", ".join(FIXTURE_NAMES))
    ver.set_defaults(func=cmd_verify)

    sol = sub.add_parser("solve", help="minimize weighted overlap penalty")
    sol.add_argument("--input", required=True,
                     help="weighted instance file or 'fixture:clause_gadget'")
    sol.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    sol.add_argument("--k", type=float, default=None)
    sol.set_defaults(func=cmd_solve)

    exp = sub.add_parser("export-plan", help="emit the plan JSON between two labelings")
    exp.add_argument("--from", dest="source", required=True)
    exp.add_argument("--to", dest="target", required=True)
    exp.add_argument("--style", required=True, type=_style)
    exp.add_argument("--out", default=None)
    exp.set_defaults(func=cmd_export_plan)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
