import json

from labelmotion.cli import main
from labelmotion.files import save_labeling_file, save_weighted_instance
from labelmotion.fixtures import shift_chain
from labelmotion.weighted import clause_gadget


def read(path):
    return path.read_bytes()


# --- simulate ----------------------------------------------------------------

def test_simulate_synthetic_deterministic(tmp_path):
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    args = ["simulate", "--dataset", "synthetic", "--script", "a",
            "--seed", "11", "--points", "150"]
    assert main(args + ["--style", "dag", "--out", str(out1)]) == 0
    assert main(args + ["--style", "dag", "--out", str(out2)]) == 0
    assert read(out1 / "metrics_dag.csv") == read(out2 / "metrics_dag.csv")
    assert read(out1 / "transitions_dag.json") == read(out2 / "transitions_dag.json")


def test_simulate_all_styles_rows(tmp_path):
    out = tmp_path / "runs"
    for style in ("naive", "dag", "simul"):
        args = ["simulate", "--dataset", "synthetic", "--script", "a",
                "--seed", "3", "--points", "150", "--style", style,
                "--out", str(out)]
        assert main(args) == 0
    rows = {}
    for style, fname in [("naive", "metrics_naive.csv"),
                         ("dag", "metrics_dag.csv"),
                         ("simultaneous", "metrics_simultaneous.csv")]:
        text = (out / fname).read_text().strip().splitlines()
        header = text[0].split(",")
        values = dict(zip(header, text[1].split(",")))
        rows[style] = values
        assert values["style"] == style
    assert float(rows["dag"]["duration_avg_s"]) <= float(rows["naive"]["duration_avg_s"])
    assert float(rows["simultaneous"]["duration_avg_s"]) <= float(rows["dag"]["duration_avg_s"])


def test_simulate_empty_dataset_all_zero_row(tmp_path):
    csv_path = tmp_path / "empty.csv"
    csv_path.write_text("id,lon,lat,timestamp,text,weight\n")
    out = tmp_path / "out"
    assert main(["simulate", "--dataset", str(csv_path), "--script", "a",
                 "--style", "dag", "--out", str(out)]) == 0
    lines = (out / "metrics_dag.csv").read_text().strip().splitlines()
    header = lines[0].split(",")
    row = dict(zip(header, lines[1].split(",")))
    assert row["overlaps_total"] == "0"
    assert row["moved"] == "0" and row["added"] == "0" and row["removed"] == "0"


def test_simulate_missing_dataset(tmp_path):
    args = ["simulate", "--dataset", str(tmp_path / "nope.csv"), "--script", "a",
            "--style", "dag", "--out", str(tmp_path / "x")]
    assert main(args) == 2


# --- verify ------------------------------------------------------------------

def test_verify_all_fixtures(capsys):
    for fixture in ["lemma1", "fig4b_degree14", "fig5_n_plus_m",
                    "shift_chain(5)", "fig8b_twelve", "clause_gadget",
                    "swap_cycle(2)"]:
        assert main(["verify", "--fixture", fixture]) == 0, fixture
        out = capsys.readouterr().out
        assert "FAIL" not in out


def test_verify_unknown_fixture():
    assert main(["verify", "--fixture", "not_a_fixture"]) == 2


# --- solve -------------------------------------------------------------------

def test_solve_clause_gadget_exact(capsys):
    assert main(["solve", "--input", "fixture:clause_gadget",
                 "--mode", "exact", "--k", "0"]) == 0
    out = capsys.readouterr().out
    assert "W = 0" in out
    assert "-> YES" in out


def test_solve_instance_file_no_diagonals(tmp_path, capsys):
    from labelmotion.geometry import LabelSpec, Slot
    from labelmotion.planner import diff_labelings
    from labelmotion.weighted import WeightedInstance

    specs = {"m": LabelSpec("m", (0.0, 0.0), 1.0, 1.0)}
    diff = diff_labelings({"m": Slot.TOP_LEFT}, {"m": Slot.TOP_RIGHT}, specs)
    inst = WeightedInstance(specs, diff, k=0.0)
    path = tmp_path / "inst.json"
    save_weighted_instance(path, inst)
    assert main(["solve", "--input", str(path), "--mode", "exact"]) == 0
    out = capsys.readouterr().out
    assert "W = 0" in out and "YES" in out


def test_solve_pinned_inward_budget_no(tmp_path, capsys):
    # Clause gadget with both directions frozen inward: W = 1 and the
    # decision at k = 0 is NO.
    import dataclasses

    gadget = clause_gadget()
    inst = dataclasses.replace(gadget.instance, frozen=dict(gadget.inward))
    path = tmp_path / "pinned.json"
    save_weighted_instance(path, inst)
    assert main(["solve", "--input", str(path), "--mode", "exact", "--k", "0"]) == 0
    out = capsys.readouterr().out
    assert "W = 1" in out
    assert "-> NO" in out


def test_solve_missing_input():
    assert main(["solve", "--input", "/nonexistent.json"]) == 2


# --- export-plan --------------------------------------------------------------

def test_export_plan_identical_labelings(tmp_path, capsys):
    inst = shift_chain(3)
    f1 = tmp_path / "l1.json"
    save_labeling_file(f1, inst.specs, inst.source)
    assert main(["export-plan", "--from", str(f1), "--to", str(f1),
                 "--style", "simul"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["makespan"] == 0.0 and doc["movements"] == []


def test_export_plan_shift_chain_styles(tmp_path, capsys):
    inst = shift_chain(4)
    f1 = tmp_path / "l1.json"
    f2 = tmp_path / "l2.json"
    save_labeling_file(f1, inst.specs, inst.source)
    save_labeling_file(f2, inst.specs, inst.target)
    assert main(["export-plan", "--from", str(f1), "--to", str(f2),
                 "--style", "simul"]) == 0
    doc = json.loads(capsys.readouterr().out)
    starts = {m["start_time"] for m in doc["movements"]}
    assert starts == {0.0}
    assert main(["export-plan", "--from", str(f1), "--to", str(f2),
                 "--style", "dag"]) == 0
    doc = json.loads(capsys.readouterr().out)
    starts = {m["label_id"]: m["start_time"] for m in doc["movements"]}
    # chain edges force back-to-front staggering
    assert starts["m4"] < starts["m3"] < starts["m2"] < starts["m1"]


def test_export_plan_rejects_overlapping_labeling(tmp_path):
    bad = {
        "version": 1,
        "label_size": [1, 1],
        "points": [{"id": "a", "x": 0, "y": 0}, {"id": "b", "x": 0.5, "y": 0}],
        "labeling": {"a": "TR", "b": "TR"},
    }
    f1 = tmp_path / "bad.json"
    f1.write_text(json.dumps(bad))
    assert main(["export-plan", "--from", str(f1), "--to", str(f1),
                 "--style", "simul"]) == 2
