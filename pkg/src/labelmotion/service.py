"""HTTP layer for the interactive map explorer.

Sessions wrap a `ScenarioSession`; every interaction returns the transition
plan (with keyframes), the new labeling, and the transition's metrics.
Responses are deterministic for identical action sequences on one dataset.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .dataset import (
    DEFAULT_EPOCH,
    SpatioPoint,
    format_timestamp,
    load_points,
    parse_timestamp,
    synthetic_points,
)
from .geometry import Rect, candidate_rect
from .mercator import project
from .planner import DAG, NAIVE, SIMULTANEOUS, plan_to_json
from .scenario import (
    DEFAULT_LABEL_PX,
    Action,
    Pan,
    ScenarioSession,
    TimeShift,
    ViewState,
    Zoom,
)

STYLES = {NAIVE, DAG, SIMULTANEOUS}
_SYNTHETIC_ID = re.compile(r"^synthetic-(\d+)$")


@dataclass
class ServiceConfig:
    dataset_dir: Optional[str] = None
    default_style: str = DAG
    default_zoom: int = 7
    default_center: Tuple[float, float] = (14.45, 41.30)
    label_px: Tuple[float, float] = DEFAULT_LABEL_PX
    screen: Tuple[int, int] = (1280, 720)
    zoom_range: Tuple[int, int] = (1, 19)
    synthetic_points: int = 300
    cors_origins: Tuple[str, ...] = ("*",)
    port: int = 8000


def load_config(path) -> ServiceConfig:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    cfg = ServiceConfig()
    for key, value in doc.items():
        if not hasattr(cfg, key):
            raise ValueError(f"unknown config key {key!r}")
        current = getattr(cfg, key)
        if isinstance(current, tuple) and value is not None:
            value = tuple(value)
        setattr(cfg, key, value)
    return cfg


@dataclass
class _Session:
    engine: ScenarioSession
    lock: threading.Lock = field(default_factory=threading.Lock)


def _rect_json(r: Rect) -> Dict[str, float]:
    return {"min_x": r.min_x, "min_y": r.min_y, "width": r.width, "height": r.height}


def _labeling_json(engine: ScenarioSession) -> Dict[str, dict]:
    out = {}
    for pid, slot in sorted(engine.labeling.items()):
        point = engine.by_id[pid]
        anchor = project(point.lon, point.lat, engine.view.zoom)
        spec_w, spec_h = engine.label_px
        from .geometry import LabelSpec

        rect = candidate_rect(LabelSpec(pid, anchor, spec_w, spec_h), slot)
        out[pid] = {
            "slot": slot.short,
            "anchor": [anchor[0], anchor[1]],
            "rect": _rect_json(rect),
            "text": point.text,
            "lon": point.lon,
            "lat": point.lat,
        }
    return out


def _view_json(view: ViewState) -> dict:
    return {
        "center_lon": view.center_lon,
        "center_lat": view.center_lat,
        "zoom": view.zoom,
        "time_of_interest": format_timestamp(view.time_of_interest),
        "screen": [view.screen_w, view.screen_h],
        "viewport": _rect_json(view.viewport()),
    }


def _parse_action(doc: dict) -> Action:
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValueError("action must be an object with a 'type'")
    kind = doc["type"]
    try:
        if kind == "pan":
            return Pan(float(doc["dlon"]), float(doc["dlat"]))
        if kind == "zoom":
            step = int(doc["step"])
            if step not in (-1, 1):
                raise ValueError("zoom is step-wise: step must be +1 or -1")
            return Zoom(step)
        if kind == "time_shift":
            return TimeShift(float(doc["minutes"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed {kind!r} action: {exc}") from exc
    raise ValueError(f"unknown action type {kind!r}")


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="labelmotion", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    datasets: Dict[str, List[SpatioPoint]] = {}
    sessions: Dict[str, _Session] = {}
    counter = itertools.count(1)

    def resolve_dataset(dataset_id: str) -> Optional[List[SpatioPoint]]:
        if dataset_id in datasets:
            return datasets[dataset_id]
        match = _SYNTHETIC_ID.match(dataset_id)
        if match:
            pts = synthetic_points(int(match.group(1)),
                                   n_points=config.synthetic_points,
                                   center=config.default_center)
            datasets[dataset_id] = pts
            return pts
        if config.dataset_dir:
            base = Path(config.dataset_dir)
            for ext in (".csv", ".json"):
                path = base / f"{dataset_id}{ext}"
                if path.exists():
                    pts = load_points(path)
                    datasets[dataset_id] = pts
                    return pts
        return None

    def initial_view(points: List[SpatioPoint], body: dict) -> ViewState:
        view_doc = body.get("view") or {}
        if points:
            default_time = max(p.timestamp for p in points)
        else:
            default_time = DEFAULT_EPOCH
        time_of_interest = (parse_timestamp(view_doc["time_of_interest"])
                            if "time_of_interest" in view_doc else default_time)
        return ViewState(
            center_lon=float(view_doc.get("center_lon", config.default_center[0])),
            center_lat=float(view_doc.get("center_lat", config.default_center[1])),
            zoom=int(view_doc.get("zoom", config.default_zoom)),
            time_of_interest=time_of_interest,
            screen_w=int(view_doc.get("screen_w", config.screen[0])),
            screen_h=int(view_doc.get("screen_h", config.screen[1])),
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/datasets/{dataset_id}")
    def dataset_info(dataset_id: str) -> dict:
        points = resolve_dataset(dataset_id)
        if points is None:
            raise HTTPException(404, f"unknown dataset {dataset_id!r}")
        return {
            "dataset_id": dataset_id,
            "points": len(points),
            "time_min": format_timestamp(min(p.timestamp for p in points))
            if points else None,
            "time_max": format_timestamp(max(p.timestamp for p in points))
            if points else None,
        }

    @app.post("/sessions", status_code=201)
    def create_session(body: dict) -> dict:
        dataset_id = body.get("dataset_id")
        if not dataset_id:
            raise HTTPException(400, "dataset_id is required")
        points = resolve_dataset(dataset_id)
        if points is None:
            raise HTTPException(404, f"unknown dataset {dataset_id!r}")
        style = body.get("style", config.default_style)
        if style not in STYLES:
            raise HTTPException(400, f"unknown style {style!r}")
        view = initial_view(points, body)
        try:
            engine = ScenarioSession(points, view, style,
                                     label_px=tuple(config.label_px),
                                     zoom_range=config.zoom_range)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        session_id = f"s{next(counter)}"
        sessions[session_id] = _Session(engine)
        return {
            "session_id": session_id,
            "dataset_id": dataset_id,
            "style": style,
            "view": _view_json(engine.view),
            "labeling": _labeling_json(engine),
        }

    def get_session(session_id: str) -> _Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        return session

    @app.post("/sessions/{session_id}/interact")
    def interact(session_id: str, body: dict) -> dict:
        session = get_session(session_id)
        try:
            action = _parse_action(body.get("action"))
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        with session.lock:
            try:
                record, plan, report, specs = session.engine.step(action)
            except ValueError as exc:
                raise HTTPException(400, str(exc))
            return {
                "session_id": session_id,
                "view": _view_json(session.engine.view),
                "labeling": _labeling_json(session.engine),
                "plan": plan_to_json(plan, specs, report),
                "metrics": dataclasses.asdict(record),
            }

    @app.get("/sessions/{session_id}/state")
    def state(session_id: str) -> dict:
        session = get_session(session_id)
        with session.lock:
            return {
                "session_id": session_id,
                "style": session.engine.style,
                "view": _view_json(session.engine.view),
                "labeling": _labeling_json(session.engine),
            }

    return app


def app_from_env() -> FastAPI:
    """Module-level app; honors a config file named by LABELMOTION_CONFIG."""
    import os

    path = os.environ.get("LABELMOTION_CONFIG")
    return create_app(load_config(path) if path else None)


app = app_from_env()
