"""Guidance-gated search: the baseline planner with a stochastic
per-successor filter in front of collision checking.

Each successor candidate draws one value u from the filter's own seeded
stream; with probability ``p_guided`` (u > 1 - p_guided) the distribution map
is consulted and its verdict pruned on, otherwise the candidate passes
unconditionally. Pruned candidates never reach collision checking or the
open/closed bookkeeping, which is where the savings come from.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .geometry import Pose, VehicleGeometry
from .guidance import Dmap, GuidanceConfig, check_dist_map
from .heuristic import CostField
from .rasters import OccupancyGrid
from .search import PlannerConfig, PlanResult, plan


class GuidedExpansionFilter:
    """Stochastic gate over the distribution map; owned by one planner run."""

    def __init__(self, dmap: Dmap, config: GuidanceConfig):
        self.dmap = dmap
        self.config = config
        self._rng = np.random.default_rng(config.seed)
        self.draws = 0
        self.consults = 0
        self.prunes = 0

    def should_prune(self, state: Pose) -> bool:
        self.draws += 1
        u = self._rng.random()
        if u > 1.0 - self.config.p_guided:
            self.consults += 1
            pruned = check_dist_map(state, self.dmap, self.config.tau)
            self.prunes += int(pruned)
            return pruned
        return False


def guided_plan(
    start: Pose,
    goal: Pose,
    grid: OccupancyGrid,
    veh: VehicleGeometry,
    cfg: PlannerConfig,
    dmap: Dmap,
    gconfig: GuidanceConfig,
    cost_field: Optional[CostField] = None,
) -> PlanResult:
    """Plan with guidance-gated expansion; identical to the baseline planner
    when p_guided = 0 or the map is all ones."""
    gate = GuidedExpansionFilter(dmap, gconfig)
    return plan(start, goal, grid, veh, cfg, expansion_filter=gate, cost_field=cost_field)
