"""Web-Mercator projection at integer zoom levels.

Map units are world pixels at the current zoom (256 * 2^z per world side).
The y axis grows northwards so that "top" slots sit above their anchor in
map coordinates; clients flip to screen space.
"""

from __future__ import annotations

import math
from typing import Tuple

TILE_SIZE = 256
MAX_LATITUDE = 85.0511287798066


def world_size(zoom: int) -> float:
    return TILE_SIZE * (2 ** zoom)


def project(lon: float, lat: float, zoom: int) -> Tuple[float, float]:
    """Lon/lat degrees to world pixels with y growing north."""
    size = world_size(zoom)
    lat = max(-MAX_LATITUDE, min(MAX_LATITUDE, lat))
    x = (lon + 180.0) / 360.0 * size
    rad = math.radians(lat)
    y_down = (1.0 - math.log(math.tan(rad) + 1.0 / math.cos(rad)) / math.pi) / 2.0 * size
    return x, size - y_down


def unproject(x: float, y: float, zoom: int) -> Tuple[float, float]:
    size = world_size(zoom)
    lon = x / size * 360.0 - 180.0
    y_down = size - y
    n = math.pi - 2.0 * math.pi * y_down / size
    lat = math.degrees(math.atan(0.5 * (math.exp(n) - math.exp(-n))))
    return lon, lat
