"""Independent reference implementations used to check the library.

Everything here recomputes results through a different route than the code
under test: shapely for point-in-rectangle, plain heapq Dijkstra for the
cost field, and a from-scratch best-first lattice search with inline
kinematics for planner equivalence.
"""

from __future__ import annotations

import heapq
import math

import numpy as np
from shapely.geometry import Point, Polygon

from parkplan.collision import is_collide
from parkplan.geometry import Pose, VehicleGeometry
from parkplan.heuristic import build_holonomic_field
from parkplan.heuristic import h as h_fun
from parkplan.rasters import OccupancyGrid
from parkplan.search import PlannerConfig

TWO_PI = 2.0 * math.pi


def collide_oracle(pose: Pose, grid: OccupancyGrid, veh: VehicleGeometry) -> bool:
    """Shapely-based check: any obstacle pixel center inside the footprint
    polygon, or the pose/corners out of bounds."""
    if not grid.contains_point(pose.x, pose.y):
        return True
    corners = veh.footprint_corners(pose)
    if not all(grid.contains_point(cx, cy) for cx, cy in corners):
        return True
    poly = Polygon(corners)
    res = grid.resolution
    rows, cols = np.nonzero(grid.cells)
    for row, col in zip(rows, cols):
        center = Point((col + 0.5) * res, (row + 0.5) * res)
        if poly.covers(center):
            return True
    return False


def dijkstra_field_oracle(grid: OccupancyGrid, goal_col: int, goal_row: int) -> np.ndarray:
    """8-connected shortest-path distances in meters, plain heapq Dijkstra."""
    height, width = grid.cells.shape
    dist = np.full((height, width), np.inf)
    if grid.cells[goal_row, goal_col]:
        return dist
    dist[goal_row, goal_col] = 0.0
    heap = [(0.0, goal_row, goal_col)]
    moves = [
        (dr, dc, math.hypot(dr, dc) * grid.resolution)
        for dr in (-1, 0, 1)
        for dc in (-1, 0, 1)
        if dr or dc
    ]
    while heap:
        d, row, col = heapq.heappop(heap)
        if d > dist[row, col]:
            continue
        for dr, dc, step in moves:
            nr, nc = row + dr, col + dc
            if 0 <= nr < height and 0 <= nc < width and not grid.cells[nr, nc]:
                nd = d + step
                if nd < dist[nr, nc]:
                    dist[nr, nc] = nd
                    heapq.heappush(heap, (nd, nr, nc))
    return dist


def lattice_search_oracle(
    start: Pose,
    goal: Pose,
    grid: OccupancyGrid,
    veh: VehicleGeometry,
    cfg: PlannerConfig,
) -> float | None:
    """From-scratch best-first search with the same dedup-greedy semantics as
    the planner (f = c + h ordering, cell dedup, open replacement on smaller
    cost), with the bicycle kinematics re-derived inline. Returns the goal
    cost or None. Pure arc-length step cost; run it with penalties disabled.
    """
    field = build_holonomic_field(grid, goal)
    xy, tb = cfg.xy_bin, cfg.theta_bin
    nbins = int(round(TWO_PI / tb))

    def cell(p: Pose) -> tuple[int, int, int]:
        return (
            int(p.x // xy),
            int(p.y // xy),
            min(int((p.theta % TWO_PI) // tb), nbins - 1),
        )

    goal_cell = cell(goal)
    counter = 0
    heap = [(h_fun(start, field, goal), 0.0, counter, start)]
    open_cost = {cell(start): 0.0}
    settled: set[tuple[int, int, int]] = set()
    while heap:
        _, c, _, pose = heapq.heappop(heap)
        k = cell(pose)
        if k in settled or open_cost.get(k) != c:
            continue
        settled.add(k)
        if k == goal_cell:
            return c
        for direction in (1, -1):
            for deg in range(-40, 50, 10):
                steer = math.radians(deg)
                x = pose.x + cfg.step.d * math.cos(pose.theta) * direction
                y = pose.y + cfg.step.d * math.sin(pose.theta) * direction
                theta = pose.theta + (cfg.step.d / cfg.step.L) * math.tan(steer) * direction
                theta = math.atan2(math.sin(theta), math.cos(theta))
                succ = Pose(x, y, theta)
                if is_collide(succ, grid, veh):
                    continue
                k2 = cell(succ)
                if k2 in settled:
                    continue
                c2 = c + cfg.step.d
                if k2 in open_cost and open_cost[k2] <= c2:
                    continue
                open_cost[k2] = c2
                counter += 1
                heapq.heappush(heap, (c2 + h_fun(succ, field, goal), c2, counter, succ))
    return None


def random_small_instance(rng: np.random.Generator):
    """A 6 m x 6 m world with a few obstacle blobs and collision-free start
    and goal poses; returns (grid, veh, cfg, start, goal)."""
    cells = np.zeros((60, 60), np.uint8)
    for _ in range(int(rng.integers(0, 6))):
        row, col = int(rng.integers(5, 55)), int(rng.integers(5, 55))
        cells[row : row + 2, col : col + 2] = 1
    grid = OccupancyGrid(cells, 0.1)
    veh = VehicleGeometry(wheelbase=1.0, body_length=1.6, body_width=0.9, rear_overhang=0.25)
    from parkplan.kinematics import StepConfig

    cfg = PlannerConfig(
        step=StepConfig(d=1.0, L=1.0), xy_bin=2.0, theta_bin=math.radians(45)
    ).arc_length_only()

    def sample_pose() -> Pose | None:
        for _ in range(500):
            p = Pose.of(
                float(rng.uniform(0, 6)), float(rng.uniform(0, 6)), float(rng.uniform(-math.pi, math.pi))
            )
            if not is_collide(p, grid, veh):
                return p
        return None

    return grid, veh, cfg, sample_pose(), sample_pose()
