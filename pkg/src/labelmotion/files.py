"""JSON file formats: labeling files and weighted instance files.

Both reuse the scenario point-record shape (id plus coordinates) with the
label size carried once per file; weighted instances add per-label weights
and the two labelings of the transition.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from .geometry import AxisOrder, LabelSpec, Slot
from .planner import Labeling, check_labeling, diff_labelings
from .weighted import WeightedInstance

_AXIS_NAMES = {"horizontal_first": AxisOrder.HORIZONTAL_FIRST,
               "vertical_first": AxisOrder.VERTICAL_FIRST,
               "h": AxisOrder.HORIZONTAL_FIRST,
               "v": AxisOrder.VERTICAL_FIRST}

FILE_VERSION = 1


def _specs_from_records(records, label_size) -> Dict[str, LabelSpec]:
    w, h = label_size
    specs: Dict[str, LabelSpec] = {}
    for rec in records:
        pid = str(rec["id"])
        if pid in specs:
            raise ValueError(f"duplicate point id {pid!r}")
        specs[pid] = LabelSpec(pid, (float(rec["x"]), float(rec["y"])),
                               float(w), float(h),
                               weight=float(rec.get("weight", 1.0)),
                               text=rec.get("text"))
    return specs


def _labeling_from_mapping(mapping, specs) -> Labeling:
    labeling: Labeling = {}
    for pid, slot_name in mapping.items():
        if pid not in specs:
            raise ValueError(f"labeling references unknown id {pid!r}")
        labeling[pid] = Slot.from_name(str(slot_name))
    return labeling


def load_labeling_file(path: Union[str, Path]) -> Tuple[Dict[str, LabelSpec], Labeling]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    specs = _specs_from_records(doc["points"], doc.get("label_size", [1.0, 1.0]))
    labeling = _labeling_from_mapping(doc["labeling"], specs)
    check_labeling(labeling, specs)
    return specs, labeling


def save_labeling_file(path: Union[str, Path], specs: Dict[str, LabelSpec],
                       labeling: Labeling) -> None:
    sizes = {(s.width, s.height) for s in specs.values()}
    if len(sizes) > 1:
        raise ValueError("labeling files carry one uniform label size")
    w, h = next(iter(sizes)) if sizes else (1.0, 1.0)
    doc = {
        "version": FILE_VERSION,
        "label_size": [w, h],
        "points": [{"id": pid, "x": s.anchor[0], "y": s.anchor[1],
                    "weight": s.weight, **({"text": s.text} if s.text else {})}
                   for pid, s in sorted(specs.items())],
        "labeling": {pid: slot.short for pid, slot in sorted(labeling.items())},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)


def load_weighted_instance(path: Union[str, Path],
                           k: Optional[float] = None) -> WeightedInstance:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    specs = _specs_from_records(doc["points"], doc.get("label_size", [1.0, 1.0]))
    l1 = _labeling_from_mapping(doc["from"], specs)
    l2 = _labeling_from_mapping(doc["to"], specs)
    diff = diff_labelings(l1, l2, specs)
    budget = float(doc.get("k", 0.0)) if k is None else float(k)
    frozen = {str(pid): _AXIS_NAMES[str(name).lower()]
              for pid, name in (doc.get("frozen") or {}).items()}
    return WeightedInstance(specs, diff, k=budget, frozen=frozen)


def save_weighted_instance(path: Union[str, Path], inst: WeightedInstance) -> None:
    sizes = {(s.width, s.height) for s in inst.specs.values()}
    w, h = next(iter(sizes)) if sizes else (1.0, 1.0)
    doc = {
        "version": FILE_VERSION,
        "label_size": [w, h],
        "points": [{"id": pid, "x": s.anchor[0], "y": s.anchor[1],
                    "weight": s.weight}
                   for pid, s in sorted(inst.specs.items())],
        "from": {pid: slot.short for pid, slot in sorted(inst.diff.source.items())},
        "to": {pid: slot.short for pid, slot in sorted(inst.diff.target.items())},
        "k": inst.k,
    }
    if inst.frozen:
        doc["frozen"] = {pid: order.name.lower()
                         for pid, order in sorted(inst.frozen.items())}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
