"""Byte rasters over the parking world and their file formats.

Axis convention (used everywhere in the toolkit): row 0 is y = 0 (south),
column 0 is x = 0 (west); world point (x, y) maps to pixel
(col = floor(x / res), row = floor(y / res)). Arrays are indexed
``cells[row, col]`` with shape (height_px, width_px).

File formats:

* "PRAS": magic ``PRAS``, u32 LE width, u32 LE height, u8 value width
  (1 for byte rasters), then the row-major payload.
* 8-bit binary PGM (P5), for visualization interchange.
"""

from __future__ import annotations

import math
import re
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import ClassVar

import numpy as np

from .errors import RasterFormatError

DEFAULT_RESOLUTION = 0.1
DEFAULT_WIDTH_PX = 250
DEFAULT_HEIGHT_PX = 150

FREE = 0
OBSTACLE = 1
START_MARK = 2
GOAL_MARK = 3

_PRAS_MAGIC = b"PRAS"


def world_to_pixel(x: float, y: float, resolution: float = DEFAULT_RESOLUTION) -> tuple[int, int]:
    """Map a world point to its (col, row) pixel."""
    return int(math.floor(x / resolution)), int(math.floor(y / resolution))


@dataclass(frozen=True)
class Raster:
    """A byte raster plus its metric resolution. Immutable once built."""

    cells: np.ndarray
    resolution: float = DEFAULT_RESOLUTION

    _allowed_values: ClassVar[tuple[int, ...]] = ()  # subclasses restrict

    def __post_init__(self) -> None:
        cells = np.ascontiguousarray(self.cells, dtype=np.uint8)
        if cells.ndim != 2:
            raise ValueError("raster cells must be a 2-D array")
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")
        if self._allowed_values and not np.isin(cells, self._allowed_values).all():
            raise ValueError(f"raster values must be in {self._allowed_values}")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def height_px(self) -> int:
        return self.cells.shape[0]

    @property
    def width_px(self) -> int:
        return self.cells.shape[1]

    @property
    def width_m(self) -> float:
        return self.width_px * self.resolution

    @property
    def height_m(self) -> float:
        return self.height_px * self.resolution

    def contains_point(self, x: float, y: float) -> bool:
        return 0.0 <= x < self.width_m and 0.0 <= y < self.height_m

    def pixel_of(self, x: float, y: float) -> tuple[int, int]:
        """(col, row) of a world point; the caller checks bounds."""
        return world_to_pixel(x, y, self.resolution)

    def value_at(self, x: float, y: float) -> int:
        col, row = self.pixel_of(x, y)
        return int(self.cells[row, col])


@dataclass(frozen=True)
class OccupancyGrid(Raster):
    """World model: 0 = free, 1 = obstacle."""

    _allowed_values: ClassVar[tuple[int, ...]] = (FREE, OBSTACLE)

    @staticmethod
    def empty(
        width_px: int = DEFAULT_WIDTH_PX,
        height_px: int = DEFAULT_HEIGHT_PX,
        resolution: float = DEFAULT_RESOLUTION,
    ) -> "OccupancyGrid":
        return OccupancyGrid(np.zeros((height_px, width_px), dtype=np.uint8), resolution)


@dataclass(frozen=True)
class SceneImage(Raster):
    """Condition encoding: 0 free, 1 obstacle, 2 start marker, 3 goal marker."""

    _allowed_values: ClassVar[tuple[int, ...]] = (FREE, OBSTACLE, START_MARK, GOAL_MARK)


@dataclass(frozen=True)
class LabelImage(Raster):
    """Binary union of expert-trajectory pixels."""

    _allowed_values: ClassVar[tuple[int, ...]] = (0, 1)


def save_pras(cells: np.ndarray, path: str | Path) -> None:
    """Write a byte raster in the PRAS format."""
    cells = np.ascontiguousarray(cells, dtype=np.uint8)
    height, width = cells.shape
    with open(path, "wb") as fh:
        fh.write(_PRAS_MAGIC)
        fh.write(struct.pack("<IIB", width, height, 1))
        fh.write(cells.tobytes())


def load_pras(path: str | Path) -> np.ndarray:
    """Read a PRAS byte raster; raises RasterFormatError on malformed input."""
    data = Path(path).read_bytes()
    if len(data) < 13:
        raise RasterFormatError(f"{path}: truncated PRAS header")
    if data[:4] != _PRAS_MAGIC:
        raise RasterFormatError(f"{path}: bad magic {data[:4]!r}")
    width, height, value_width = struct.unpack("<IIB", data[4:13])
    if value_width != 1:
        raise RasterFormatError(f"{path}: unsupported value width {value_width}")
    payload = data[13:]
    if len(payload) != width * height:
        raise RasterFormatError(
            f"{path}: payload is {len(payload)} bytes, expected {width * height}"
        )
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()


def save_pgm(cells: np.ndarray, path: str | Path) -> None:
    """Write a byte raster as binary PGM (P5, maxval 255)."""
    cells = np.ascontiguousarray(cells, dtype=np.uint8)
    height, width = cells.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(cells.tobytes())


def load_pgm(path: str | Path) -> np.ndarray:
    """Read a binary PGM (P5) file into a uint8 array."""
    data = Path(path).read_bytes()
    match = re.match(rb"P5\s+(\d+)\s+(\d+)\s+(\d+)\s", data)
    if not match:
        raise RasterFormatError(f"{path}: not a binary PGM file")
    width, height, maxval = (int(g) for g in match.groups())
    if maxval > 255:
        raise RasterFormatError(f"{path}: 16-bit PGM not supported")
    payload = data[match.end():]
    if len(payload) != width * height:
        raise RasterFormatError(f"{path}: payload size mismatch")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()
