"""Spatiotemporal point streams: file formats and the synthetic generator.

Points carry an id, a lon/lat position, an RFC-3339 timestamp, display text,
and a non-negative weight.  Files are CSV with header
``id,lon,lat,timestamp,text,weight`` or an equivalent JSON array.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import List, Optional, Sequence, Union

CSV_HEADER = ["id", "lon", "lat", "timestamp", "text", "weight"]


@dataclass(frozen=True)
class SpatioPoint:
    id: str
    lon: float
    lat: float
    timestamp: datetime
    text: str = ""
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"lon out of range: {self.lon}")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"lat out of range: {self.lat}")
        if self.timestamp.tzinfo is None:
            raise ValueError("timestamps must be timezone-aware")
        if self.weight < 0:
            raise ValueError("weight must be non-negative")


def parse_timestamp(text: str) -> datetime:
    """RFC-3339 parser accepting a trailing Z."""
    text = text.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_timestamp(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _point_from_record(rec: dict) -> SpatioPoint:
    return SpatioPoint(
        id=str(rec["id"]),
        lon=float(rec["lon"]),
        lat=float(rec["lat"]),
        timestamp=parse_timestamp(rec["timestamp"]) if isinstance(rec["timestamp"], str)
        else rec["timestamp"],
        text=str(rec.get("text", "") or ""),
        weight=float(rec.get("weight", 1.0) or 1.0),
    )


def load_points_csv(path: Union[str, Path]) -> List[SpatioPoint]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        return [_point_from_record(row) for row in reader]


def load_points_json(path: Union[str, Path]) -> List[SpatioPoint]:
    with open(path, encoding="utf-8") as fh:
        records = json.load(fh)
    return [_point_from_record(rec) for rec in records]


def load_points(path: Union[str, Path]) -> List[SpatioPoint]:
    path = Path(path)
    if path.suffix.lower() == ".json":
        return load_points_json(path)
    return load_points_csv(path)


def save_points_csv(points: Sequence[SpatioPoint], path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for p in points:
            writer.writerow([p.id, p.lon, p.lat, format_timestamp(p.timestamp),
                             p.text, p.weight])


DEFAULT_EPOCH = datetime(2021, 5, 29, 0, 0, 0, tzinfo=timezone.utc)


def synthetic_points(seed: int,
                     n_points: int = 400,
                     center: tuple = (14.45, 41.30),
                     clusters: int = 6,
                     spread_deg: float = 2.5,
                     cluster_sigma_deg: float = 0.35,
                     span_hours: float = 6.0,
                     start: Optional[datetime] = None) -> List[SpatioPoint]:
    """Deterministic clustered point stream standing in for real geodata."""
    rng = random.Random(seed)
    start = start or DEFAULT_EPOCH
    lon0, lat0 = center
    centers = [(lon0 + rng.uniform(-spread_deg, spread_deg),
                lat0 + rng.uniform(-spread_deg, spread_deg))
               for _ in range(clusters)]
    points = []
    for i in range(n_points):
        clon, clat = rng.choice(centers)
        lon = min(180.0, max(-180.0, rng.gauss(clon, cluster_sigma_deg)))
        lat = min(89.0, max(-89.0, rng.gauss(clat, cluster_sigma_deg)))
        ts = start + timedelta(hours=rng.uniform(0.0, span_hours))
        ts = ts.replace(microsecond=0)
        points.append(SpatioPoint(
            id=f"pt{i:05d}",
            lon=lon,
            lat=lat,
            timestamp=ts,
            text=f"event {i} near ({lon:.2f}, {lat:.2f})",
            weight=1.0,
        ))
    return points
