"""Condition and label image rasterization.

The condition image overlays start/goal markers (values 2 and 3) on the
obstacle raster; each marker is the pose pixel plus a 1.0 m heading arrow
drawn with integer (Bresenham) line stepping. Markers may only overwrite
free space.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import InvalidScenarioError, OutOfBoundsError
from .geometry import Pose
from .rasters import GOAL_MARK, OBSTACLE, START_MARK, LabelImage, OccupancyGrid, SceneImage

if TYPE_CHECKING:
    from .search import Trajectory

ARROW_LENGTH_M = 1.0


def bresenham(c0: int, r0: int, c1: int, r1: int) -> list[tuple[int, int]]:
    """Integer line from (c0, r0) to (c1, r1), inclusive of both endpoints."""
    pixels = []
    dc, dr = abs(c1 - c0), abs(r1 - r0)
    sc = 1 if c1 >= c0 else -1
    sr = 1 if r1 >= r0 else -1
    err = dc - dr
    c, r = c0, r0
    while True:
        pixels.append((c, r))
        if c == c1 and r == r1:
            break
        e2 = 2 * err
        if e2 > -dr:
            err -= dr
            c += sc
        if e2 < dc:
            err += dc
            r += sr
    return pixels


def _marker_pixels(grid: OccupancyGrid, pose: Pose) -> list[tuple[int, int]]:
    """Pose pixel plus the heading-arrow pixels, deduplicated, bounds-checked."""
    if not grid.contains_point(pose.x, pose.y):
        raise InvalidScenarioError(f"marker pose {pose} outside the world")
    c0, r0 = grid.pixel_of(pose.x, pose.y)
    tip_x = pose.x + ARROW_LENGTH_M * math.cos(pose.theta)
    tip_y = pose.y + ARROW_LENGTH_M * math.sin(pose.theta)
    if not grid.contains_point(tip_x, tip_y):
        raise InvalidScenarioError(f"heading arrow of {pose} leaves the world")
    c1, r1 = grid.pixel_of(tip_x, tip_y)
    return bresenham(c0, r0, c1, r1)


def rasterize_condition(grid: OccupancyGrid, start: Pose, goal: Pose) -> SceneImage:
    """Overlay start (2) and goal (3) markers on the obstacle raster."""
    image = grid.cells.copy()
    for pose, value in ((start, START_MARK), (goal, GOAL_MARK)):
        for col, row in _marker_pixels(grid, pose):
            if image[row, col] == OBSTACLE:
                raise InvalidScenarioError(
                    f"marker pixel ({col}, {row}) would overwrite an obstacle"
                )
            image[row, col] = value
    return SceneImage(image, grid.resolution)


def rasterize_trajectories(
    trajs: Sequence["Trajectory"] | Iterable["Trajectory"],
    grid: OccupancyGrid,
) -> LabelImage:
    """Binary union of all trajectory-state pixels."""
    image = np.zeros_like(grid.cells)
    for traj in trajs:
        for pose in traj.poses:
            if not grid.contains_point(pose.x, pose.y):
                raise OutOfBoundsError(f"trajectory state {pose} outside the world")
            col, row = grid.pixel_of(pose.x, pose.y)
            image[row, col] = 1
    return LabelImage(image, grid.resolution)
