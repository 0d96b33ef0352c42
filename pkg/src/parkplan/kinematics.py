"""Discretized bicycle transition model and the discrete control-action set.

One search step moves the rear axle by an arc length ``d``; the heading is
advanced with the pre-step heading:

    x'     = x + d cos(theta) dir
    y'     = y + d sin(theta) dir
    theta' = theta + (d / L) tan(steer) dir
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .geometry import Pose, normalize_angle

STEER_DEGREES = tuple(range(-40, 50, 10))  # 9 values, 10-degree interval
DIRECTIONS = (1, -1)


class Action(NamedTuple):
    """One control: steering angle [rad] and direction (+1 forward, -1 reverse)."""

    steer: float
    dir: int


@dataclass(frozen=True)
class StepConfig:
    """Per-step expansion amount d and wheelbase L, both in meters."""

    d: float = 2.0
    L: float = 2.7

    def __post_init__(self) -> None:
        if self.d <= 0 or self.L <= 0:
            raise ValueError("d and L must be positive")


def transition(state: Pose, a: Action, cfg: StepConfig) -> Pose:
    """Apply one control step to a state."""
    x = state.x + cfg.d * math.cos(state.theta) * a.dir
    y = state.y + cfg.d * math.sin(state.theta) * a.dir
    theta = normalize_angle(state.theta + (cfg.d / cfg.L) * math.tan(a.steer) * a.dir)
    return Pose(x, y, theta)


def action_set() -> list[Action]:
    """All 18 controls (9 steering angles x 2 directions), in canonical order:
    forward sweep from -40 to +40 degrees, then the reverse sweep."""
    return [
        Action(math.radians(deg), direction)
        for direction in DIRECTIONS
        for deg in STEER_DEGREES
    ]
