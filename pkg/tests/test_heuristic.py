import math

import numpy as np
import pytest

from parkplan.errors import InvalidScenarioError
from parkplan.geometry import Pose
from parkplan.heuristic import build_holonomic_field, h
from parkplan.rasters import OccupancyGrid

from oracles import dijkstra_field_oracle


def small_grid(cells=None, size=(60, 60)):
    if cells is None:
        cells = np.zeros(size, dtype=np.uint8)
    return OccupancyGrid(cells, 0.1)


def test_empty_grid_diagonal_distance():
    grid = small_grid()
    goal = Pose(0.05, 0.05, 0.0)
    field = build_holonomic_field(grid, goal)
    assert field.lookup(0.05, 0.05) == 0.0
    # one cell east = one axis step
    assert field.lookup(0.15, 0.05) == pytest.approx(0.1)
    # one cell northeast = one diagonal step
    assert field.lookup(0.15, 0.15) == pytest.approx(0.1 * math.sqrt(2))
    # 10 east, 4 north: 4 diagonals + 6 axis steps
    assert field.lookup(1.05, 0.45) == pytest.approx(0.4 * math.sqrt(2) + 0.6)


def test_obstacle_cells_are_infinite():
    cells = np.zeros((60, 60), dtype=np.uint8)
    cells[30, 30] = 1
    grid = small_grid(cells)
    field = build_holonomic_field(grid, Pose(0.05, 0.05, 0.0))
    assert math.isinf(field.lookup(3.05, 3.05))


def test_wall_forces_detour():
    cells = np.zeros((60, 60), dtype=np.uint8)
    cells[10:50, 30] = 1  # vertical wall with gaps at top and bottom
    grid = small_grid(cells)
    goal = Pose(4.55, 3.05, 0.0)
    field = build_holonomic_field(grid, goal)
    start_x, start_y = 1.05, 3.05
    euclid = math.hypot(start_x - goal.x, start_y - goal.y)
    assert field.lookup(start_x, start_y) > euclid + 1.0


def test_matches_dijkstra_oracle():
    rng = np.random.default_rng(31)
    for _ in range(5):
        cells = np.zeros((60, 60), dtype=np.uint8)
        for _ in range(rng.integers(0, 6)):
            r, c = rng.integers(0, 58, size=2)
            cells[r : r + 2, c : c + 2] = 1
        grid = small_grid(cells)
        free = np.argwhere(cells == 0)
        row, col = free[rng.integers(0, len(free))]
        field = build_holonomic_field(
            grid, Pose((col + 0.5) * 0.1, (row + 0.5) * 0.1, 0.0)
        )
        oracle = dijkstra_field_oracle(grid, int(col), int(row))
        assert np.allclose(field.values, oracle, equal_nan=False)


def test_h_is_max_of_both_terms():
    grid = small_grid()
    goal = Pose(3.05, 3.05, 0.0)
    field = build_holonomic_field(grid, goal)
    state = Pose(0.05, 3.05, 0.0)
    # straight east: both terms equal the 3 m gap
    assert h(state, field, goal) == pytest.approx(3.0)
    # diagonal: Euclidean dominates the 8-connected path
    diag = Pose(0.05, 0.05, 0.0)
    assert h(diag, field, goal) == pytest.approx(math.hypot(3.0, 3.0))


def test_unreachable_state_gives_inf():
    cells = np.zeros((60, 60), dtype=np.uint8)
    cells[:, 30] = 1  # full wall
    grid = small_grid(cells)
    field = build_holonomic_field(grid, Pose(4.55, 3.05, 0.0))
    assert math.isinf(h(Pose(1.05, 3.05, 0.0), field, Pose(4.55, 3.05, 0.0)))


def test_goal_inside_obstacle_rejected():
    cells = np.zeros((60, 60), dtype=np.uint8)
    cells[30, 30] = 1
    grid = small_grid(cells)
    with pytest.raises(InvalidScenarioError):
        build_holonomic_field(grid, Pose(3.05, 3.05, 0.0))


def test_lookup_out_of_bounds_is_inf():
    grid = small_grid()
    field = build_holonomic_field(grid, Pose(0.05, 0.05, 0.0))
    assert math.isinf(field.lookup(-0.1, 0.05))
    assert math.isinf(field.lookup(0.05, 6.1))
