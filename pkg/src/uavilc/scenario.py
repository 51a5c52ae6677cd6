"""Node kinematics, relative link geometry and Doppler shift.

Positions and velocities are 3-vectors in a Cartesian frame (meters,
meters/second); elevation is measured from the horizontal plane, azimuth
in the x-y plane with the four-quadrant convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError

SPEED_OF_LIGHT = 2.998e8  # m/s

# horizontal offsets below this fraction of the slant range count as overhead
_DEGENERATE_REL_TOL = 1e-9


@dataclass(frozen=True)
class NodeState:
    """Position/velocity of the UAV or ground node at one time slot."""

    position: np.ndarray   # (3,) m
    velocity: np.ndarray   # (3,) m/s
    time_index: int = 0

    def __post_init__(self):
        pos = np.asarray(self.position, dtype=float)
        vel = np.asarray(self.velocity, dtype=float)
        if pos.shape != (3,) or vel.shape != (3,):
            raise ValueError("position and velocity must be 3-vectors")
        if not (np.isfinite(pos).all() and np.isfinite(vel).all()):
            raise ValueError("position and velocity must be finite")
        if self.time_index < 0:
            raise ValueError("time_index must be nonnegative")
        object.__setattr__(self, "position", pos)
        object.__setattr__(self, "velocity", vel)


@dataclass(frozen=True)
class MotionNoise:
    """Per-axis standard deviations of the per-slot motion disturbance (m)."""

    sigma_x: float
    sigma_y: float
    sigma_z: float

    def __post_init__(self):
        for s in (self.sigma_x, self.sigma_y, self.sigma_z):
            if not s >= 0.0:
                raise ValueError("motion noise sigmas must be >= 0")

    def as_array(self) -> np.ndarray:
        return np.array([self.sigma_x, self.sigma_y, self.sigma_z])

    @property
    def isotropic(self) -> bool:
        return self.sigma_x == self.sigma_y == self.sigma_z


@dataclass(frozen=True)
class LinkGeometry:
    """Relative geometry of one UAV-to-ground link.

    ``d`` is the slant distance, ``d_h`` the horizontal distance, ``d_z``
    the signed height gap (UAV z minus node z).  ``degenerate`` marks an
    overhead pass (d_h ~ 0) where azimuth is conventional and any term
    carrying 1/cos(theta) must be skipped.
    """

    d: float
    d_h: float
    d_z: float
    theta: float   # elevation, (-pi/2, pi/2]
    phi: float     # azimuth, (-pi, pi]
    degenerate: bool = False

    def __post_init__(self):
        if not self.d > 0.0:
            raise ValueError("slant distance must be positive")
        if abs(self.d * self.d - (self.d_h * self.d_h + self.d_z * self.d_z)) > 1e-9 * self.d * self.d:
            raise ValueError("inconsistent geometry: d^2 != d_h^2 + d_z^2")
        if not (-math.pi / 2 < self.theta <= math.pi / 2 + 1e-15):
            raise ValueError("elevation out of range")
        if not (-math.pi < self.phi <= math.pi + 1e-15):
            raise ValueError("azimuth out of range")

    def displacement(self) -> np.ndarray:
        """Reconstruct the UAV-minus-node displacement vector."""
        ct = math.cos(self.theta)
        return self.d * np.array([
            ct * math.cos(self.phi),
            ct * math.sin(self.phi),
            math.sin(self.theta),
        ])


def step_motion(state: NodeState, noise: MotionNoise, t0: float,
                rng: np.random.Generator) -> NodeState:
    """Advance one slot: drift by velocity*t0 plus a zero-mean Gaussian kick."""
    if not t0 > 0.0:
        raise ValueError("slot duration t0 must be positive")
    kick = rng.normal(size=3) * noise.as_array()
    return NodeState(
        position=state.position + state.velocity * t0 + kick,
        velocity=state.velocity,
        time_index=state.time_index + 1,
    )


def simulate_path(state: NodeState, noise: MotionNoise, t0: float, steps: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Positions after 1..steps slots, (steps, 3).

    Batched equivalent of repeated :func:`step_motion`; consumes the RNG
    stream in the same order, so both produce identical trajectories.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    kicks = rng.normal(size=(steps, 3)) * noise.as_array()
    drift = state.velocity * t0
    return state.position + np.cumsum(kicks + drift, axis=0)


def link_geometry(uav: NodeState, gn: NodeState) -> LinkGeometry:
    """Relative geometry of the UAV-to-node link at a common time slot."""
    delta = uav.position - gn.position
    d = float(np.linalg.norm(delta))
    if d == 0.0:
        raise DegenerateGeometryError("UAV and node positions coincide")
    d_h = float(math.hypot(delta[0], delta[1]))
    d_z = float(delta[2])
    degenerate = d_h < _DEGENERATE_REL_TOL * d
    theta = math.atan2(d_z, d_h)
    phi = 0.0 if degenerate else math.atan2(delta[1], delta[0])
    return LinkGeometry(d=d, d_h=d_h, d_z=d_z, theta=theta, phi=phi,
                        degenerate=degenerate)


def doppler_shift(relative_speed: float, f_c: float) -> float:
    """Carrier Doppler shift f_d = v * f_c / c for relative speed v >= 0."""
    if relative_speed < 0.0:
        raise ValueError("relative speed must be >= 0")
    return relative_speed * f_c / SPEED_OF_LIGHT
