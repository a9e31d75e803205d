"""Sagittal-plane scene geometry and ultrasonic cone raycasting.

The world is a 2D vertical slice: x runs forward from the user (cm),
z runs upward from nominal ground level (cm).  Obstacles are axis-aligned
rectangles, terrain is a piecewise-constant elevation profile whose jumps
implicitly define vertical riser faces (stair fronts, pothole walls).

Echoes are only returned from faces hit near-perpendicularly: a
forward-aimed beam sees vertical faces (obstacle fronts/backs, risers),
a downward-aimed beam sees horizontal faces (ground, obstacle tops).
Grazing hits on the other orientation scatter away and produce no echo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional

# Faces thinner than this (forward extent, cm) return no usable echo.
MIN_OBSTACLE_THICKNESS_CM = 0.3

# Extent used to close the terrain profile off to flat ground at elevation 0.
_FAR_CM = 1.0e7

_EPS = 1e-9


class GeometryError(ValueError):
    """Invalid scene, ray, or sampling parameters."""


class Aim(Enum):
    """Beam axis of a sensor: horizontal (forward) or straight down."""

    FORWARD = "forward"
    DOWN = "down"


@dataclass(frozen=True)
class Rect:
    """Axis-aligned obstacle body in the forward x height plane (cm)."""

    x0: float
    x1: float
    z0: float
    z1: float

    def __post_init__(self):
        if not self.x0 < self.x1:
            raise GeometryError(f"rect needs x0 < x1, got [{self.x0}, {self.x1}]")
        if not self.z0 < self.z1:
            raise GeometryError(f"rect needs z0 < z1, got [{self.z0}, {self.z1}]")


@dataclass(frozen=True)
class GroundSegment:
    """Terrain span [x0, x1) at elevation dz relative to nominal ground."""

    x0: float
    x1: float
    dz: float

    def __post_init__(self):
        if not self.x0 < self.x1:
            raise GeometryError(
                f"ground segment needs x0 < x1, got [{self.x0}, {self.x1}]"
            )


@dataclass(frozen=True)
class Ray:
    """Single ray: origin (x, z) and angle in radians off the aim axis."""

    x: float
    z: float
    angle: float = 0.0


@dataclass(frozen=True)
class SagittalScene:
    """Immutable obstacle + terrain description of the vertical slice."""

    obstacles: tuple = ()
    ground: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        object.__setattr__(self, "ground", tuple(self.ground))
        self.ground_profile  # validate terrain eagerly

    @cached_property
    def ground_profile(self) -> tuple:
        """Authored segments sorted and made contiguous with dz=0 fill."""
        segs = sorted(self.ground, key=lambda s: (s.x0, s.x1))
        out = []
        cursor = None
        for seg in segs:
            if cursor is not None:
                if seg.x0 < cursor - _EPS:
                    raise GeometryError(
                        f"overlapping ground segments at x={seg.x0}"
                    )
                if seg.x0 > cursor + _EPS:
                    out.append(GroundSegment(cursor, seg.x0, 0.0))
            out.append(seg)
            cursor = seg.x1
        return tuple(out)

    def elevation(self, x: float) -> float:
        """Terrain elevation at forward position x (0 outside the profile)."""
        for seg in self.ground_profile:
            if seg.x0 <= x < seg.x1:
                return seg.dz
        return 0.0

    @cached_property
    def vertical_faces(self) -> tuple:
        """Faces visible to forward beams: (x, z_lo, z_hi) triples."""
        faces = []
        for r in self.obstacles:
            faces.append((r.x0, r.z0, r.z1))
            faces.append((r.x1, r.z0, r.z1))
        # Riser faces wherever the elevation profile jumps, including the
        # transitions to flat ground at either end of the authored profile.
        profile = self.ground_profile
        if profile:
            elevations = [0.0] + [s.dz for s in profile] + [0.0]
            boundaries = [profile[0].x0] + [s.x1 for s in profile]
            for x, (lo, hi) in zip(boundaries, zip(elevations, elevations[1:])):
                if lo != hi:
                    faces.append((x, min(lo, hi), max(lo, hi)))
        return tuple(faces)

    @cached_property
    def horizontal_faces(self) -> tuple:
        """Faces visible to downward beams: (z, x_lo, x_hi) triples."""
        faces = []
        for r in self.obstacles:
            faces.append((r.z1, r.x0, r.x1))
            faces.append((r.z0, r.x0, r.x1))
        profile = self.ground_profile
        if profile:
            faces.append((0.0, -_FAR_CM, profile[0].x0))
            for seg in profile:
                faces.append((seg.dz, seg.x0, seg.x1))
            faces.append((0.0, profile[-1].x1, _FAR_CM))
        else:
            faces.append((0.0, -_FAR_CM, _FAR_CM))
        return tuple(faces)


def ray_direction(aim: Aim, angle: float) -> tuple:
    """Unit direction of a ray at `angle` radians off the aim axis."""
    if aim is Aim.FORWARD:
        return math.cos(angle), math.sin(angle)
    return math.sin(angle), -math.cos(angle)


def raycast(scene: SagittalScene, ray: Ray, aim: Aim) -> Optional[float]:
    """Distance (cm) to the nearest echoing face along the ray, or None.

    Forward beams echo off vertical faces only, downward beams off
    horizontal faces only; raises GeometryError if the ray starts below
    the local terrain.
    """
    if ray.z < scene.elevation(ray.x) - _EPS:
        raise GeometryError(
            f"ray origin ({ray.x}, {ray.z}) is below the ground surface"
        )
    dx, dz = ray_direction(aim, ray.angle)
    best = None
    if aim is Aim.FORWARD:
        for fx, zlo, zhi in scene.vertical_faces:
            if abs(dx) < _EPS:
                continue
            t = (fx - ray.x) / dx
            if t <= _EPS:
                continue
            z_hit = ray.z + t * dz
            if zlo - _EPS <= z_hit <= zhi + _EPS:
                if best is None or t < best:
                    best = t
    else:
        for fz, xlo, xhi in scene.horizontal_faces:
            if abs(dz) < _EPS:
                continue
            t = (fz - ray.z) / dz
            if t <= _EPS:
                continue
            x_hit = ray.x + t * dx
            if xlo - _EPS <= x_hit <= xhi + _EPS:
                if best is None or t < best:
                    best = t
    return best


def cone_min_distance(
    scene: SagittalScene,
    origin: tuple,
    aim: Aim,
    half_angle: float = 15.0,
    n_rays: int = 31,
) -> Optional[float]:
    """Nearest echo over a fan of `n_rays` rays spanning +-half_angle degrees.

    n_rays must be odd (>= 3) so the axis ray is always sampled.  Obstacles
    thinner than MIN_OBSTACLE_THICKNESS_CM along x are invisible; terrain
    features have no thickness floor.
    """
    if n_rays < 3 or n_rays % 2 == 0:
        raise GeometryError(f"n_rays must be odd and >= 3, got {n_rays}")
    visible = _cull_thin_obstacles(scene)
    ox, oz = origin
    half = math.radians(half_angle)
    best = None
    for i in range(n_rays):
        angle = -half + (2.0 * half) * i / (n_rays - 1)
        d = raycast(visible, Ray(ox, oz, angle), aim)
        if d is not None and (best is None or d < best):
            best = d
    return best


def _cull_thin_obstacles(scene: SagittalScene) -> SagittalScene:
    kept = tuple(
        r
        for r in scene.obstacles
        if (r.x1 - r.x0) >= MIN_OBSTACLE_THICKNESS_CM - 1e-9
    )
    if len(kept) == len(scene.obstacles):
        return scene
    return SagittalScene(kept, scene.ground)


def overlap_distance(h_upper: float, h_lower: float, divergence: float = 30.0) -> float:
    """Forward distance (cm) at which two stacked cones first intersect.

    Two sensors mounted at heights h_upper and h_lower, both aimed forward
    with full opening angle `divergence` (degrees): the lower edge of the
    upper cone meets the upper edge of the lower cone at
    (h_upper - h_lower) / (2 tan(divergence / 2)).
    """
    if not 0.0 < divergence < 180.0:
        raise GeometryError(f"divergence must be in (0, 180), got {divergence}")
    if h_upper < h_lower:
        raise GeometryError("h_upper must be >= h_lower")
    return (h_upper - h_lower) / (2.0 * math.tan(math.radians(divergence) / 2.0))
