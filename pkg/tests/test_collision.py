import math

import numpy as np

from oracles import collide_oracle
from parkplan.collision import is_collide
from parkplan.geometry import Pose, VehicleGeometry
from parkplan.rasters import OccupancyGrid

VEH = VehicleGeometry()


def grid_with(pixels, shape=(150, 250)):
    cells = np.zeros(shape, dtype=np.uint8)
    for col, row in pixels:
        cells[row, col] = 1
    return OccupancyGrid(cells, 0.1)


def test_empty_grid_free():
    assert not is_collide(Pose(12.5, 7.5, 0.0), OccupancyGrid.empty(), VEH)


def test_obstacle_under_reference_point():
    grid = grid_with([(125, 75)])
    assert is_collide(Pose(12.5, 7.5, 0.0), grid, VEH)


def test_front_corner_hits_distant_pixel():
    # footprint at (10, 7.5, 0) spans x in [9.1, 13.6], y in [6.55, 8.45];
    # pixel (135, 65) has center (13.55, 6.555): inside via the front-right
    # corner region, ~3.7 m from the reference point.
    grid = grid_with([(135, 65)])
    pose = Pose(10.0, 7.5, 0.0)
    assert math.hypot(13.55 - pose.x, 6.555 - pose.y) > 3.0
    assert is_collide(pose, grid, VEH)
    assert collide_oracle(pose, grid, VEH)
    # one pixel further east is outside the rectangle
    grid2 = grid_with([(137, 65)])
    assert not is_collide(pose, grid2, VEH)
    assert not collide_oracle(pose, grid2, VEH)


def test_out_of_bounds_is_collision():
    grid = OccupancyGrid.empty()
    assert is_collide(Pose(-1.0, 7.5, 0.0), grid, VEH)  # reference outside
    assert is_collide(Pose(0.5, 7.5, math.pi), grid, VEH)  # front corners leave west edge
    assert is_collide(Pose(24.0, 7.5, 0.0), grid, VEH)  # nose past the east edge


def test_monotone_in_obstacles():
    rng = np.random.default_rng(2)
    for _ in range(50):
        base_pixels = [(int(rng.integers(0, 250)), int(rng.integers(0, 150))) for _ in range(5)]
        pose = Pose.of(rng.uniform(1, 24), rng.uniform(1, 14), rng.uniform(-math.pi, math.pi))
        sparse = grid_with(base_pixels)
        extra = base_pixels + [(int(rng.integers(0, 250)), int(rng.integers(0, 150))) for _ in range(15)]
        dense = grid_with(extra)
        if is_collide(pose, sparse, VEH):
            assert is_collide(pose, dense, VEH)


def test_agrees_with_analytic_oracle_on_random_pairs():
    # 1,000 random (grid, pose) pairs vs the shapely-based oracle
    rng = np.random.default_rng(42)
    mismatches = 0
    for _ in range(1000):
        n_obs = int(rng.integers(1, 20))
        pixels = [(int(rng.integers(0, 250)), int(rng.integers(0, 150))) for _ in range(n_obs)]
        grid = grid_with(pixels)
        pose = Pose.of(rng.uniform(-1, 26), rng.uniform(-1, 16), rng.uniform(-math.pi, math.pi))
        if is_collide(pose, grid, VEH) != collide_oracle(pose, grid, VEH):
            mismatches += 1
    assert mismatches == 0
