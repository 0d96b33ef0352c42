"""Planar poses and the vehicle body rectangle.

The pose reference point is the center of the rear axle; the body rectangle
extends from ``-rear_overhang`` to ``body_length - rear_overhang`` along the
heading and ``body_width / 2`` to either side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    wrapped = math.fmod(theta, TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    elif wrapped > math.pi:
        wrapped -= TWO_PI
    return wrapped


class Pose(NamedTuple):
    """Vehicle configuration (x [m], y [m], heading [rad] in (-pi, pi])."""

    x: float
    y: float
    theta: float

    @staticmethod
    def of(x: float, y: float, theta: float) -> "Pose":
        """Build a pose with the heading normalized and finiteness enforced."""
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(theta)):
            raise ValueError("pose coordinates must be finite")
        return Pose(x, y, normalize_angle(theta))


@dataclass(frozen=True)
class VehicleGeometry:
    """Rectangular body dimensions, all in meters."""

    wheelbase: float = 2.7
    body_length: float = 4.5
    body_width: float = 1.9
    rear_overhang: float = 0.9

    def __post_init__(self) -> None:
        if min(self.wheelbase, self.body_length, self.body_width, self.rear_overhang) <= 0:
            raise ValueError("vehicle dimensions must be positive")
        if self.body_length <= self.wheelbase:
            raise ValueError("body_length must exceed wheelbase")

    def footprint_corners(self, pose: Pose) -> list[tuple[float, float]]:
        """World coordinates of the four body corners at ``pose``.

        Order: rear-right, rear-left, front-left, front-right.
        """
        cos_t, sin_t = math.cos(pose.theta), math.sin(pose.theta)
        x_rear = -self.rear_overhang
        x_front = self.body_length - self.rear_overhang
        half_w = self.body_width / 2.0
        local = [(x_rear, -half_w), (x_rear, half_w), (x_front, half_w), (x_front, -half_w)]
        return [
            (pose.x + lx * cos_t - ly * sin_t, pose.y + lx * sin_t + ly * cos_t)
            for lx, ly in local
        ]
