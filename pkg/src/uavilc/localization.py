"""3D Fisher-information machinery for position tracking.

Pilot measurements contribute rank-one information along the range,
elevation and azimuth directions; inertial dead reckoning contributes a
diagonal block per slot; the tracking bound follows from a Schur-complement
recursion over slots, and the position error bound is the trace of the
inverse information matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import RadioParams
from .errors import DegenerateGeometryError, NumericalConditioningError
from .scenario import SPEED_OF_LIGHT, LinkGeometry, MotionNoise

_SYMMETRY_TOL = 1e-12
_PSD_TOL = -1e-10
_DET_THRESHOLD = 1e-30


@dataclass(frozen=True)
class Fim3:
    """Symmetric positive-semidefinite 3x3 information matrix (1/m^2)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("information matrix must be 3x3")
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m - m.T).max() > _SYMMETRY_TOL * scale:
            raise ValueError("information matrix must be symmetric")
        m = 0.5 * (m + m.T)
        if float(np.linalg.eigvalsh(m).min()) < _PSD_TOL * scale:
            raise ValueError("information matrix must be positive semidefinite")
        object.__setattr__(self, "matrix", m)

    def __add__(self, other: "Fim3") -> "Fim3":
        return Fim3(self.matrix + other.matrix)


@dataclass(frozen=True)
class RangingIntensities:
    """Information intensities of the range and the two angle measurements."""

    lambda_r: float
    lambda_theta: float
    lambda_phi: float

    def __post_init__(self):
        for v in (self.lambda_r, self.lambda_theta, self.lambda_phi):
            if v < 0.0:
                raise ValueError("intensities must be >= 0")


@dataclass(frozen=True)
class UncertaintyRadius:
    """Geometric radius (m) of the position-uncertainty region."""

    l: float

    def __post_init__(self):
        if self.l < 0.0:
            raise ValueError("uncertainty radius must be >= 0")


def direction_vectors(geom: LinkGeometry):
    """Gradients of (range, elevation, azimuth) w.r.t. the ground-node position.

    The elevation vector carries a 1/d scaling and the azimuth vector a
    1/(d*cos(theta)) scaling, so each maps a position perturbation to the
    corresponding measurement perturbation.
    """
    if geom.degenerate:
        raise DegenerateGeometryError(
            "overhead geometry: azimuth undefined, skip angle information")
    st, ct = math.sin(geom.theta), math.cos(geom.theta)
    sp, cp = math.sin(geom.phi), math.cos(geom.phi)
    q_r = np.array([-cp * ct, -sp * ct, -st])
    q_theta = np.array([cp * st, sp * st, -ct]) / geom.d
    q_phi = np.array([sp, -cp, 0.0]) / (geom.d * ct)
    return q_r, q_theta, q_phi


def ranging_intensities(snr: float, params: RadioParams,
                        array_factor: float) -> RangingIntensities:
    """Measurement information intensities at linear SNR ``snr``.

    Range information scales with the squared effective bandwidth; both
    angle intensities scale with the squared carrier-weighted bandwidth and
    the antenna-array geometry factor.
    """
    if snr < 0.0:
        raise ValueError("snr must be >= 0")
    c_sq = SPEED_OF_LIGHT ** 2
    base = 8.0 * math.pi ** 2 * snr / c_sq
    lam_r = base * params.zeta ** 2 * (1.0 - params.chi ** 2)
    lam_angle = base * (params.zeta * params.chi + params.f_c) ** 2 * array_factor
    return RangingIntensities(lambda_r=lam_r, lambda_theta=lam_angle,
                              lambda_phi=lam_angle)


def pilot_fim(geom: LinkGeometry, intensities: RangingIntensities) -> Fim3:
    """Measurement information of one pilot slot as a sum of rank-one terms.

    For degenerate (overhead) geometry only the range term is usable; angle
    information is dropped there.
    """
    if geom.degenerate:
        st = math.copysign(1.0, geom.d_z)
        q_r = np.array([0.0, 0.0, -st])
        return Fim3(intensities.lambda_r * np.outer(q_r, q_r))
    q_r, q_theta, q_phi = direction_vectors(geom)
    m = (intensities.lambda_r * np.outer(q_r, q_r)
         + intensities.lambda_theta * np.outer(q_theta, q_theta)
         + intensities.lambda_phi * np.outer(q_phi, q_phi))
    return Fim3(m)


def _inv3(m: np.ndarray) -> np.ndarray:
    """Inverse of a 3x3 matrix via the adjugate; no LAPACK round trip."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    co00 = e * i - f * h
    co01 = f * g - d * i
    co02 = d * h - e * g
    det = a * co00 + b * co01 + c * co02
    if abs(det) < _DET_THRESHOLD:
        raise NumericalConditioningError("3x3 inverse below determinant threshold")
    adj = np.array([
        [co00, c * h - b * i, b * f - c * e],
        [co01, a * i - c * g, c * d - a * f],
        [co02, b * g - a * h, a * e - b * d],
    ])
    return adj / det


def inertial_information(noise: MotionNoise) -> np.ndarray:
    """Diagonal per-slot information of the dead-reckoning motion model."""
    sig = noise.as_array()
    with np.errstate(divide="ignore"):
        diag = np.where(sig > 0.0, 1.0 / np.square(sig), np.inf)
    if np.isinf(diag).any():
        raise ValueError("zero motion noise gives unbounded inertial information")
    return np.diag(diag)


def recursive_fim(prev: Fim3, current_meas: Fim3 | None,
                  inertial_var: MotionNoise) -> Fim3:
    """One slot of the tracking-information recursion.

    With D the per-slot inertial information, the updated information is
    J = J_meas + D - D (J_prev + D)^{-1} D, where J_meas is the pilot
    measurement information (zero outside pilot slots).  Infinite motion
    noise (D = 0) decouples the slots and returns the measurement alone.
    """
    sig = inertial_var.as_array()
    meas = np.zeros((3, 3)) if current_meas is None else current_meas.matrix
    if np.isinf(sig).all():
        return Fim3(meas)
    d_mat = inertial_information(inertial_var)
    core = _inv3(prev.matrix + d_mat)
    return Fim3(meas + d_mat - d_mat @ core @ d_mat)


def coast_fim(prev: Fim3, inertial_var: MotionNoise, slots: int) -> Fim3:
    """Fast-forward ``slots`` measurement-free slots of the recursion.

    For isotropic motion noise the recursion preserves eigenvectors and each
    eigenvalue evolves as lam -> a*lam/(a + slots*lam) with a = 1/sigma^2,
    which this computes in one eigendecomposition; anisotropic noise falls
    back to the slot loop.
    """
    if slots < 0:
        raise ValueError("slots must be >= 0")
    if slots == 0:
        return prev
    if not inertial_var.isotropic:
        j = prev
        for _ in range(slots):
            j = recursive_fim(j, None, inertial_var)
        return j
    a = 1.0 / inertial_var.sigma_x ** 2
    lam, vec = np.linalg.eigh(prev.matrix)
    lam = np.clip(lam, 0.0, None)
    lam = a * lam / (a + slots * lam)
    return Fim3((vec * lam) @ vec.T)


def pcrb_trace(j: Fim3) -> float:
    """Position-error lower bound: trace of the inverse information (m^2).

    A singular information matrix yields an infinite bound rather than a
    numerical error; near-singular matrices yield the correspondingly large
    finite trace.
    """
    eig = np.linalg.eigvalsh(j.matrix)
    if eig.min() <= 0.0:
        return math.inf
    return float(np.sum(1.0 / eig))


def uncertainty_radius(j: Fim3, conf_scale: float = 1.0) -> UncertaintyRadius:
    """Uncertainty-region radius: conf_scale * sqrt of the position bound."""
    if conf_scale < 0.0:
        raise ValueError("confidence scale must be >= 0")
    return UncertaintyRadius(conf_scale * math.sqrt(pcrb_trace(j)))
