import sys
from pathlib import Path
from typing import NamedTuple

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracles helper module

from parkplan.geometry import VehicleGeometry
from parkplan.heuristic import CostField, build_holonomic_field
from parkplan.rasters import OccupancyGrid
from parkplan.scenarios import ParkingScenario, sample_scenario
from parkplan.search import PlannerConfig, PlanResult, plan


class BankEntry(NamedTuple):
    scenario: ParkingScenario
    grid: OccupancyGrid
    field: CostField
    unguided: PlanResult
    veh: VehicleGeometry
    cfg: PlannerConfig


@pytest.fixture(scope="session")
def default_veh():
    return VehicleGeometry()


@pytest.fixture(scope="session")
def default_cfg():
    return PlannerConfig()


@pytest.fixture(scope="session")
def scenario_bank(default_veh, default_cfg):
    """First 100 solvable scenarios with their grids, heuristic fields, and
    unguided solutions; shared across the suite to keep runtime down."""
    bank = []
    seed = 0
    while len(bank) < 100:
        seed += 1
        try:
            scenario = sample_scenario(seed)
        except Exception:
            continue
        grid = scenario.grid()
        field = build_holonomic_field(grid, scenario.goal)
        result = plan(scenario.start, scenario.goal, grid, default_veh, default_cfg, cost_field=field)
        if result.solved:
            bank.append(BankEntry(scenario, grid, field, result, default_veh, default_cfg))
    return bank
