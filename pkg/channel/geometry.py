# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import math
from dataclasses import dataclass, replace
from typing import List, Tuple

import numpy as np

from common import DEFAULT_CELL_RADIUS_M, DEFAULT_MIN_DISTANCE_M, DEFAULT_SPEED_MPS
from utils.exceptions import GeometryError

Point = Tuple[float, float]


@dataclass(frozen=True)
class CellGeometry:
    """Annulus around a base station at the origin."""

    radius_m: float = DEFAULT_CELL_RADIUS_M
    min_distance_m: float = DEFAULT_MIN_DISTANCE_M

    def __post_init__(self):
        if not (self.radius_m > self.min_distance_m > 0):
            raise GeometryError(
                "geometry violation: expected radius_m > min_distance_m > 0. Got radius_m={}, min_distance_m={}".format(
                    self.radius_m, self.min_distance_m
                )
            )

    @classmethod
    def from_opts(cls, opts) -> "CellGeometry":
        return cls(
            radius_m=getattr(opts, "cell.radius_m", DEFAULT_CELL_RADIUS_M),
            min_distance_m=getattr(opts, "cell.min_distance_m", DEFAULT_MIN_DISTANCE_M),
        )


@dataclass(frozen=True)
class UserState:
    user_id: int
    position: Point
    waypoint: Point
    speed_mps: float = DEFAULT_SPEED_MPS

    @property
    def distance_m(self) -> float:
        return math.hypot(*self.position)


def uniform_point(geometry: CellGeometry, rng: np.random.Generator) -> Point:
    """Point drawn uniformly over the area of the annulus."""
    r_sq = rng.uniform(geometry.min_distance_m**2, geometry.radius_m**2)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    r = math.sqrt(r_sq)
    return (r * math.cos(theta), r * math.sin(theta))


def clamp_to_annulus(point: Point, geometry: CellGeometry) -> Point:
    dist = math.hypot(*point)
    if dist == 0.0:
        return (geometry.min_distance_m, 0.0)
    scale = min(max(dist, geometry.min_distance_m), geometry.radius_m) / dist
    return (point[0] * scale, point[1] * scale)


def place_user(
    user_id: int,
    geometry: CellGeometry,
    rng: np.random.Generator,
    speed_mps: float = DEFAULT_SPEED_MPS,
) -> UserState:
    position = uniform_point(geometry, rng)
    return UserState(
        user_id=user_id,
        position=position,
        waypoint=uniform_point(geometry, rng),
        speed_mps=speed_mps,
    )


def advance_mobility(
    users: List[UserState],
    dt: float,
    rng: np.random.Generator,
    geometry: CellGeometry = CellGeometry(),
) -> List[UserState]:
    """Random-waypoint step.

    Each user moves ``speed * dt`` towards its waypoint. A user that reaches the
    waypoint stops there and draws a new uniform waypoint in the annulus. The
    straight segment between two annulus points may cross the inner disc, so
    positions are clamped radially.
    """
    if dt <= 0:
        raise GeometryError("dt should be positive. Got: {}".format(dt))

    moved = []
    for user in users:
        step = user.speed_mps * dt
        if step <= 0.0:
            moved.append(user)
            continue

        dx = user.waypoint[0] - user.position[0]
        dy = user.waypoint[1] - user.position[1]
        remaining = math.hypot(dx, dy)
        if remaining <= step:
            position = user.waypoint
            waypoint = uniform_point(geometry, rng)
        else:
            position = (
                user.position[0] + dx * step / remaining,
                user.position[1] + dy * step / remaining,
            )
            waypoint = user.waypoint
        moved.append(
            replace(
                user,
                position=clamp_to_annulus(position, geometry),
                waypoint=waypoint,
            )
        )
    return moved
