"""Directional antenna gain, instantaneous SNR, temporal fading correlation,
channel-estimation MMSE, and the first-order-Markov Monte-Carlo oracle.

The fading gain is a unit-variance circularly-symmetric complex Gaussian that
decorrelates geometrically over time; pilot-based estimation uses the linear
MMSE rule, whose residual error splits into a noise term 1/(1+k*gamma) and a
Doppler term 2*k*gamma*(1-alpha)/(1+k*gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadioParams:
    """Physical-layer constants of the link.

    g0:          antenna gain constant (dimensionless)
    beta0:       channel power at 1 m reference distance (linear)
    sigma0_sq:   receiver noise power (W)
    f_c:         carrier frequency (Hz)
    bandwidth:   bandwidth entering the fading-correlation exponent (Hz)
    zeta:        effective signal bandwidth (Hz)
    chi:         baseband-carrier correlation coefficient, in [0, 1)
    kappa:       fading correlation level, in (0, 1)
    t0:          symbol period (s)
    """

    g0: float = 2.28
    beta0: float = 1e-8
    sigma0_sq: float = 1e-14
    f_c: float = 4.9e9
    bandwidth: float = 1e6
    zeta: float = 1e6
    chi: float = math.sqrt(0.32)
    kappa: float = 0.8
    t0: float = 66.7e-6

    def __post_init__(self):
        for name in ("g0", "beta0", "sigma0_sq", "f_c", "bandwidth", "zeta", "t0"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.kappa < 1.0:
            raise ValueError("kappa must lie in (0, 1)")
        if not 0.0 <= self.chi < 1.0:
            raise ValueError("chi must lie in [0, 1)")


@dataclass(frozen=True)
class EstimationError:
    """Channel-estimation mean-square error split into its two sources."""

    noise_term: float
    doppler_term: float

    def __post_init__(self):
        if not 0.0 <= self.noise_term <= 1.0:
            raise ValueError("noise term must lie in [0, 1]")
        if self.doppler_term < 0.0:
            raise ValueError("doppler term must be >= 0")

    @property
    def total(self) -> float:
        return self.noise_term + self.doppler_term


def antenna_gain(beamwidth_half: float, offset_theta: float, offset_phi: float,
                 params: RadioParams) -> float:
    """Directional gain: g0/phi^2 strictly inside the beam, 0 outside.

    ``beamwidth_half`` is the half-beamwidth phi in (0, pi/2); offsets are the
    angular misalignments from the beam axis.  The beam boundary is exclusive.
    """
    if not 0.0 < beamwidth_half < math.pi / 2:
        raise ValueError("half-beamwidth must lie in (0, pi/2)")
    if abs(offset_theta) < beamwidth_half and abs(offset_phi) < beamwidth_half:
        return params.g0 / (beamwidth_half * beamwidth_half)
    return 0.0


def instantaneous_snr(power: float, beamwidth_half: float, d: float,
                      params: RadioParams) -> float:
    """Linear receive SNR of an aligned beam at slant distance d."""
    if not power > 0.0:
        raise ValueError("power must be positive")
    if not d > 0.0:
        raise ValueError("distance must be positive")
    if not 0.0 < beamwidth_half < math.pi / 2:
        raise ValueError("half-beamwidth must lie in (0, pi/2)")
    return power * params.g0 * params.beta0 / (
        beamwidth_half ** 2 * d ** 2 * params.sigma0_sq)


def snr_per_watt(beamwidth_half: float, d: float, params: RadioParams) -> float:
    """Linear SNR produced by one watt; SNR is linear in transmit power."""
    return instantaneous_snr(1.0, beamwidth_half, d, params)


def correlation(n_gap: float, f_d: float, params: RadioParams) -> float:
    """Fading correlation over a gap of ``n_gap`` symbols.

    alpha = kappa ** (n_gap * f_d / (0.423 * B)); equals 1 for a static
    channel or a zero gap, and decays geometrically with the Doppler shift.
    """
    if n_gap < 0:
        raise ValueError("symbol gap must be >= 0")
    if f_d < 0:
        raise ValueError("doppler shift must be >= 0")
    return params.kappa ** (n_gap * f_d / (0.423 * params.bandwidth))


def per_symbol_correlation(f_d: float, params: RadioParams) -> float:
    """Single-symbol correlation step; its n-th power is correlation(n, .)."""
    return correlation(1, f_d, params)


def estimation_mse(pilots: int, snr: float, corr: float) -> EstimationError:
    """MMSE of pilot-based channel estimation read back after a fading gap.

    ``pilots`` is the number of unit-power orthogonal pilot symbols, ``snr``
    the per-symbol linear SNR, and ``corr`` the fading correlation between
    the estimation instant and the read-back instant.
    """
    if pilots < 1:
        raise ValueError("at least one pilot symbol is required")
    if not snr > 0.0:
        raise ValueError("snr must be positive")
    if not 0.0 < corr <= 1.0:
        raise ValueError("correlation must lie in (0, 1]")
    ksnr = pilots * snr
    noise = 1.0 / (1.0 + ksnr)
    doppler = 2.0 * ksnr * (1.0 - corr) / (1.0 + ksnr)
    return EstimationError(noise_term=noise, doppler_term=doppler)


def simulate_markov_channel(pilots: int, n_gap: int, snr: float,
                            alpha_step: float, trials: int,
                            rng: np.random.Generator,
                            chunk: int = 200_000) -> float:
    """Empirical readback MSE of the MMSE estimator on a Markov fading channel.

    Draws a unit-variance complex Gaussian gain, observes it through
    ``pilots`` unit-power pilot symbols at SNR ``snr``, applies the
    closed-form MMSE estimate, evolves the gain ``n_gap`` steps with
    per-symbol correlation ``alpha_step``, and returns the mean squared
    estimation error at the readback instant.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if pilots < 1:
        raise ValueError("at least one pilot symbol is required")
    if not 0.0 < alpha_step <= 1.0:
        raise ValueError("per-symbol correlation must lie in (0, 1]")
    if n_gap < 0:
        raise ValueError("symbol gap must be >= 0")

    innov = math.sqrt(max(0.0, 1.0 - alpha_step * alpha_step))
    root_snr = math.sqrt(snr)
    mmse_scale = root_snr / (1.0 + pilots * snr)

    total = 0.0
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        h = _ccn(rng, m)
        # received pilots y_j = sqrt(snr)*h*x_j + n_j with unit pilots x_j = 1;
        # the estimator correlates them against the pilot sequence
        correlated = np.zeros(m, dtype=complex)
        for _ in range(pilots):
            correlated += root_snr * h + _ccn(rng, m)
        estimate = mmse_scale * correlated
        for _ in range(n_gap):
            h = alpha_step * h + innov * _ccn(rng, m)
        err = h - estimate
        total += float(np.sum(err.real ** 2 + err.imag ** 2))
        done += m
    return total / trials


def _ccn(rng: np.random.Generator, m: int) -> np.ndarray:
    """m draws of circularly-symmetric complex Gaussian with unit variance."""
    return (rng.normal(size=m) + 1j * rng.normal(size=m)) / math.sqrt(2.0)
