"""Admissible cost-to-go estimate used by both planners.

The holonomic field is the 8-connected shortest-path distance (axis step =
one cell, diagonal step = sqrt(2) cells) from every free cell to the goal
cell, with obstacles impassable. The heuristic is the max of that field and
the straight-line distance to the goal, so it never underestimates either
term alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from skimage.graph import MCP_Geometric

from .errors import InvalidScenarioError
from .geometry import Pose
from .rasters import OccupancyGrid


@dataclass(frozen=True)
class CostField:
    """Per-cell cost-to-goal in meters over the occupancy raster; unreachable
    and obstacle cells hold +inf."""

    values: np.ndarray  # (height_px, width_px) float64, meters
    resolution: float
    goal_x: float
    goal_y: float

    def __post_init__(self) -> None:
        self.values.setflags(write=False)

    def lookup(self, x: float, y: float) -> float:
        col = int(math.floor(x / self.resolution))
        row = int(math.floor(y / self.resolution))
        if not (0 <= row < self.values.shape[0] and 0 <= col < self.values.shape[1]):
            return math.inf
        return float(self.values[row, col])


def build_holonomic_field(grid: OccupancyGrid, goal: Pose) -> CostField:
    """Obstacle-aware 2-D shortest-path field to the goal cell."""
    if not grid.contains_point(goal.x, goal.y):
        raise InvalidScenarioError(f"goal {goal} outside the world")
    goal_col, goal_row = grid.pixel_of(goal.x, goal.y)
    if grid.cells[goal_row, goal_col]:
        raise InvalidScenarioError("goal cell lies inside an obstacle")

    step_costs = np.where(grid.cells.astype(bool), np.inf, 1.0)
    mcp = MCP_Geometric(step_costs, fully_connected=True)
    cumulative, _ = mcp.find_costs([(goal_row, goal_col)])
    values = cumulative * grid.resolution
    values[grid.cells.astype(bool)] = np.inf
    return CostField(values, grid.resolution, goal.x, goal.y)


def h(state: Pose, field: CostField, goal: Pose) -> float:
    """max(Euclidean distance to goal, holonomic field lookup); inf propagates."""
    euclid = math.hypot(state.x - goal.x, state.y - goal.y)
    return max(euclid, field.lookup(state.x, state.y))
