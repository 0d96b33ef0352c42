"""Trajectory-distribution rasters (Dmaps) and the pruning predicate.

A Dmap holds one value in [0, 1] per occupancy-grid pixel; higher means more
predicted trajectory mass. ``check_dist_map`` returns True ("prune") when the
value under a state is strictly below the threshold; out-of-bounds states
prune as well, since the map is consulted before any bounds/collision check.

File format "DMAP": magic ``DMAP``, u32 LE width, u32 LE height, then
width*height little-endian float32 values, row-major.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from scipy.spatial import cKDTree

from .errors import RasterFormatError
from .geometry import Pose
from .rasters import DEFAULT_RESOLUTION, OccupancyGrid, save_pgm

if TYPE_CHECKING:
    from .search import Trajectory

_DMAP_MAGIC = b"DMAP"

DEFAULT_TAU = 0.1
DEFAULT_P_GUIDED = 0.8


@dataclass(frozen=True)
class Dmap:
    """Raster of predicted trajectory mass, same geometry as the world grid."""

    values: np.ndarray  # (height_px, width_px) float32 in [0, 1]
    resolution: float = DEFAULT_RESOLUTION

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values, dtype=np.float32)
        if values.ndim != 2:
            raise ValueError("dmap values must be a 2-D array")
        if not np.isfinite(values).all():
            raise ValueError("dmap values must be finite")
        if values.min() < 0.0 or values.max() > 1.0:
            raise ValueError("dmap values must lie in [0, 1]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def height_px(self) -> int:
        return self.values.shape[0]

    @property
    def width_px(self) -> int:
        return self.values.shape[1]

    @staticmethod
    def constant(
        value: float,
        width_px: int = 250,
        height_px: int = 150,
        resolution: float = DEFAULT_RESOLUTION,
    ) -> "Dmap":
        return Dmap(np.full((height_px, width_px), value, dtype=np.float32), resolution)


@dataclass(frozen=True)
class GuidanceConfig:
    """Pruning threshold, gate probability, and the RNG seed of the gate."""

    tau: float = DEFAULT_TAU
    p_guided: float = DEFAULT_P_GUIDED
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError("tau must lie in [0, 1]")
        if not 0.0 <= self.p_guided <= 1.0:
            raise ValueError("p_guided must lie in [0, 1]")


def check_dist_map(state: Pose, dmap: Dmap, tau: float) -> bool:
    """True ("off-distribution, prune") iff the map value under the state is
    strictly below tau; out-of-bounds states always prune."""
    col = int(math.floor(state.x / dmap.resolution))
    row = int(math.floor(state.y / dmap.resolution))
    if not (0 <= row < dmap.height_px and 0 <= col < dmap.width_px):
        return True
    return bool(dmap.values[row, col] < tau)


def synthetic_oracle(
    reference: "Trajectory",
    radius: float = 1.5,
    grid: OccupancyGrid | None = None,
) -> Dmap:
    """Non-neural guidance stand-in built by dilating a reference trajectory.

    Value 1 within ``radius`` of any reference pose position, decaying
    linearly to 0 at twice the radius (distances taken from pixel centers).
    """
    if not reference.steps:
        raise ValueError("reference trajectory is empty")
    if grid is None:
        grid = OccupancyGrid.empty()
    res = grid.resolution
    points = np.array([(p.x, p.y) for p in reference.poses])
    cols = (np.arange(grid.width_px) + 0.5) * res
    rows = (np.arange(grid.height_px) + 0.5) * res
    cx, cy = np.meshgrid(cols, rows)
    centers = np.column_stack([cx.ravel(), cy.ravel()])
    dist, _ = cKDTree(points).query(centers)
    values = np.clip(2.0 - dist / radius, 0.0, 1.0).reshape(grid.height_px, grid.width_px)
    return Dmap(values.astype(np.float32), res)


def save_dmap(dmap: Dmap, path: str | Path) -> None:
    with open(path, "wb") as fh:
        fh.write(_DMAP_MAGIC)
        fh.write(struct.pack("<II", dmap.width_px, dmap.height_px))
        fh.write(np.ascontiguousarray(dmap.values, dtype="<f4").tobytes())


def load_dmap(path: str | Path, resolution: float = DEFAULT_RESOLUTION) -> Dmap:
    data = Path(path).read_bytes()
    if len(data) < 12:
        raise RasterFormatError(f"{path}: truncated DMAP header")
    if data[:4] != _DMAP_MAGIC:
        raise RasterFormatError(f"{path}: bad magic {data[:4]!r}")
    width, height = struct.unpack("<II", data[4:12])
    payload = data[12:]
    if len(payload) != width * height * 4:
        raise RasterFormatError(
            f"{path}: payload is {len(payload)} bytes, expected {width * height * 4}"
        )
    values = np.frombuffer(payload, dtype="<f4").reshape(height, width)
    if not np.isfinite(values).all():
        raise RasterFormatError(f"{path}: NaN or infinite values in payload")
    if values.min() < 0.0 or values.max() > 1.0:
        raise RasterFormatError(f"{path}: values outside [0, 1]")
    return Dmap(values.copy(), resolution)


def dmap_to_pgm(dmap: Dmap, path: str | Path) -> None:
    """Export a Dmap for visualization (values scaled to 0..255, rounded)."""
    save_pgm(np.rint(dmap.values * 255.0).astype(np.uint8), path)
