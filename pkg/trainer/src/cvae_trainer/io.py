"""Readers and writers for the rasters this package exchanges with the
planning toolkit.

Both formats are tiny little-endian binary containers:

* ``PRAS``: magic ``PRAS``, u32 width, u32 height, u8 value width (always 1),
  then width*height row-major bytes. Scene directories hold the condition
  image (values 0..3) and the trajectory label (values 0/1) in this format.
* ``DMAP``: magic ``DMAP``, u32 width, u32 height, then width*height
  float32 values in [0, 1], row-major. This is what the guided planner
  consumes.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

_PRAS_MAGIC = b"PRAS"
_DMAP_MAGIC = b"DMAP"


class RasterIOError(ValueError):
    """A raster file violates its format contract."""


def load_pras(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    if len(data) < 13:
        raise RasterIOError(f"{path}: truncated header")
    if data[:4] != _PRAS_MAGIC:
        raise RasterIOError(f"{path}: bad magic {data[:4]!r}")
    width, height, value_width = struct.unpack("<IIB", data[4:13])
    if value_width != 1:
        raise RasterIOError(f"{path}: unsupported value width {value_width}")
    payload = data[13:]
    if len(payload) != width * height:
        raise RasterIOError(f"{path}: payload is {len(payload)} bytes, expected {width * height}")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()


def save_dmap(values: np.ndarray, path: str | Path) -> None:
    values = np.asarray(values, dtype="<f4")
    if values.ndim != 2:
        raise RasterIOError("dmap values must be a 2-D array")
    if not np.isfinite(values).all() or values.min() < 0.0 or values.max() > 1.0:
        raise RasterIOError("dmap values must be finite and lie in [0, 1]")
    height, width = values.shape
    with open(path, "wb") as fh:
        fh.write(_DMAP_MAGIC)
        fh.write(struct.pack("<II", width, height))
        fh.write(np.ascontiguousarray(values).tobytes())


def load_dmap(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    if len(data) < 12:
        raise RasterIOError(f"{path}: truncated header")
    if data[:4] != _DMAP_MAGIC:
        raise RasterIOError(f"{path}: bad magic {data[:4]!r}")
    width, height = struct.unpack("<II", data[4:12])
    payload = data[12:]
    if len(payload) != width * height * 4:
        raise RasterIOError(f"{path}: payload is {len(payload)} bytes, expected {width * height * 4}")
    values = np.frombuffer(payload, dtype="<f4").reshape(height, width)
    if not np.isfinite(values).all() or values.min() < 0.0 or values.max() > 1.0:
        raise RasterIOError(f"{path}: values out of range")
    return values.copy()
