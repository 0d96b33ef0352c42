"""Oriented-rectangle footprint collision checking on the occupancy grid.

The footprint rectangle is rasterized by scanning its pixel bounding box and
testing pixel-center containment; a pose whose reference point or any corner
leaves the grid counts as a collision rather than an error.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import Pose, VehicleGeometry
from .rasters import OccupancyGrid


def is_collide(pose: Pose, grid: OccupancyGrid, veh: VehicleGeometry) -> bool:
    """True iff the vehicle body at ``pose`` overlaps an obstacle or the
    world boundary."""
    if not grid.contains_point(pose.x, pose.y):
        return True
    corners = veh.footprint_corners(pose)
    if not all(grid.contains_point(cx, cy) for cx, cy in corners):
        return True

    res = grid.resolution
    xs = [c[0] for c in corners]
    ys = [c[1] for c in corners]
    col_lo = int(math.floor(min(xs) / res))
    col_hi = int(math.floor(max(xs) / res))
    row_lo = int(math.floor(min(ys) / res))
    row_hi = int(math.floor(max(ys) / res))

    window = grid.cells[row_lo : row_hi + 1, col_lo : col_hi + 1]
    if not window.any():
        return False

    # Pixel centers of the obstacle cells inside the bounding box, expressed
    # in the body frame; collide when any lies inside the rectangle.
    rows, cols = np.nonzero(window)
    px = (cols + col_lo + 0.5) * res - pose.x
    py = (rows + row_lo + 0.5) * res - pose.y
    cos_t, sin_t = math.cos(pose.theta), math.sin(pose.theta)
    local_x = px * cos_t + py * sin_t
    local_y = -px * sin_t + py * cos_t

    half_w = veh.body_width / 2.0
    inside = (
        (local_x >= -veh.rear_overhang)
        & (local_x <= veh.body_length - veh.rear_overhang)
        & (np.abs(local_y) <= half_w)
    )
    return bool(inside.any())
