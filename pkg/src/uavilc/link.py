"""Per-frame spectral-efficiency objective and link feasibility.

A frame spends k pilot symbols on channel estimation and n symbols on data;
its spectral efficiency is the data fraction times log2(1 + effective SNR),
where the effective SNR discounts the instantaneous SNR by the estimation
error accumulated over the data span.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .channel import RadioParams, correlation, estimation_mse, instantaneous_snr
from .errors import FeasibilityError, InfeasibleLinkError
from .scenario import LinkGeometry

DEFAULT_TD_CAP_SLOTS = 10_000


@dataclass(frozen=True)
class FramePlan:
    """Decision variables of one frame, plus derived link quantities.

    ``pilots`` (k) and ``data_symbols`` (n) are symbol counts, so the pilot
    and data durations are integer multiples of the symbol period by
    construction.  Derived fields are filled by :func:`evaluate_frame`.
    """

    pilots: int
    data_symbols: int
    beamwidth: float          # half-beamwidth, rad
    power: float              # W
    snr: float | None = None
    est_mse: float | None = None
    effective_snr: float | None = None
    se: float | None = None

    def __post_init__(self):
        if int(self.pilots) != self.pilots or self.pilots < 1:
            raise ValueError("pilot count must be an integer >= 1")
        if int(self.data_symbols) != self.data_symbols or self.data_symbols < 1:
            raise ValueError("data symbol count must be an integer >= 1")
        if not 0.0 < self.beamwidth < math.pi / 2:
            raise ValueError("half-beamwidth must lie in (0, pi/2)")
        if not self.power > 0.0:
            raise ValueError("power must be positive")


@dataclass(frozen=True)
class FrameContext:
    """Everything about a frame that is not a decision variable."""

    geom: LinkGeometry
    f_d: float
    params: RadioParams
    gamma_th: float           # linear SNR threshold

    def snr(self, power: float, beamwidth: float) -> float:
        return instantaneous_snr(power, beamwidth, self.geom.d, self.params)

    def snr_per_watt(self, beamwidth: float) -> float:
        return instantaneous_snr(1.0, beamwidth, self.geom.d, self.params)


def effective_snr(snr: float, mse: float) -> float:
    """SNR usable after channel-estimation loss, floored at zero.

    gamma_e = gamma*(1 - mse)/(1 + gamma*mse); an estimation MSE above one
    means the estimate is worse than useless, so the value is clamped to 0
    to keep downstream logarithms defined.
    """
    if not snr > 0.0:
        raise ValueError("snr must be positive")
    if mse < 0.0:
        raise ValueError("mse must be >= 0")
    return max(0.0, snr * (1.0 - mse) / (1.0 + snr * mse))


def se_value(pilots: int, data_symbols: int, snr: float, f_d: float,
             params: RadioParams) -> float:
    """Frame spectral efficiency via the estimation-error chain (bits/s/Hz).

    Defined (and floored at 0) everywhere, including where the estimation
    error exceeds one; feasibility against the SNR threshold is checked
    separately.
    """
    alpha = correlation(data_symbols, f_d, params)
    mse = estimation_mse(pilots, snr, alpha).total
    gamma_e = effective_snr(snr, mse)
    overhead = data_symbols / (pilots + data_symbols)
    return overhead * math.log2(1.0 + gamma_e)


def se_closed_form(pilots: int, data_symbols: float, snr: float, f_d: float,
                   params: RadioParams) -> float:
    """Frame spectral efficiency as a single closed-form ratio.

    Algebraically identical to :func:`se_value` on the feasible region but
    not floored, so it goes negative once decorrelation makes the estimate
    useless.  ``data_symbols`` may be fractional (relaxed duration).
    """
    k, n, g = pilots, data_symbols, snr
    alpha = correlation(n, f_d, params)
    num = 1.0 + k * g + g + k * g * g
    den = 1.0 + k * g + g + 2.0 * k * g * g * (1.0 - alpha)
    return n / (k + n) * math.log2(num / den)


def se_snr_derivative(pilots: int, data_symbols: float, snr: float, f_d: float,
                      params: RadioParams) -> float:
    """d(spectral efficiency)/d(snr) at fixed frame structure."""
    k, n, g = pilots, data_symbols, snr
    alpha = correlation(n, f_d, params)
    num = 1.0 + k * g + g + k * g * g
    den = 1.0 + k * g + g + 2.0 * k * g * g * (1.0 - alpha)
    dnum = k + 1.0 + 2.0 * k * g
    dden = k + 1.0 + 4.0 * k * g * (1.0 - alpha)
    return n / (k + n) * (dnum / num - dden / den) / math.log(2.0)


def se_duration_derivative(pilots: int, data_symbols: float, snr: float,
                           f_d: float, params: RadioParams) -> float:
    """d(spectral efficiency)/d(data symbols) at fixed pilots and SNR.

    This is the linearization slope used by the duration solver; the data
    count is treated as continuous.
    """
    k, n, g = pilots, data_symbols, snr
    decay = f_d / (0.423 * params.bandwidth)       # per-symbol log-decay rate
    alpha = params.kappa ** (n * decay)
    num = 1.0 + k * g + g + k * g * g
    den = 1.0 + k * g + g + 2.0 * k * g * g * (1.0 - alpha)
    rate = math.log2(num / den)
    dden = -2.0 * k * g * g * math.log(params.kappa) * decay * alpha
    drate = -dden / (den * math.log(2.0))
    return k / (k + n) ** 2 * rate + n / (k + n) * drate


def evaluate_frame(plan: FramePlan, ctx: FrameContext) -> FramePlan:
    """Fill a plan's derived link quantities, enforcing the SNR threshold."""
    snr = ctx.snr(plan.power, plan.beamwidth)
    alpha = correlation(plan.data_symbols, ctx.f_d, ctx.params)
    mse = estimation_mse(plan.pilots, snr, alpha).total
    gamma_e = effective_snr(snr, mse)
    if gamma_e < ctx.gamma_th:
        raise FeasibilityError(
            f"effective SNR {gamma_e:.4g} below threshold {ctx.gamma_th:.4g}",
            constraint="C1")
    overhead = plan.data_symbols / (plan.pilots + plan.data_symbols)
    return replace(plan, snr=snr, est_mse=mse, effective_snr=gamma_e,
                   se=overhead * math.log2(1.0 + gamma_e))


def frame_se(plan: FramePlan, ctx: FrameContext) -> float:
    """Spectral efficiency of a feasible plan (bits/s/Hz)."""
    return evaluate_frame(plan, ctx).se


def average_se(plans, contexts) -> float:
    """Arithmetic mean of the per-frame spectral efficiencies."""
    plans = list(plans)
    contexts = list(contexts)
    if not plans or len(plans) != len(contexts):
        raise ValueError("need one context per plan, at least one frame")
    return sum(frame_se(p, c) for p, c in zip(plans, contexts)) / len(plans)


def max_transmission_duration(pilots: int, snr: float, gamma_th: float,
                              f_d: float, params: RadioParams,
                              td_cap: float | None = None) -> float:
    """Longest data duration (s) keeping the effective SNR above threshold.

    Inverts the estimation-error growth against the error budget implied by
    the threshold.  A static channel (f_d = 0) never decorrelates, so the
    configured ceiling is returned; if even an infinitesimal duration
    violates the budget the result is 0.
    """
    if td_cap is None:
        td_cap = DEFAULT_TD_CAP_SLOTS * params.t0
    if not snr > gamma_th:
        raise InfeasibleLinkError(
            f"snr {snr:.4g} at or below threshold {gamma_th:.4g}",
            constraint="C1")
    if f_d == 0.0:
        return td_cap
    mse_budget = (snr - gamma_th) / (snr * (1.0 + gamma_th))
    ksnr = pilots * snr
    # correlation at which the estimation error exhausts the budget
    alpha_req = (2.0 * ksnr + 1.0 - mse_budget * (1.0 + ksnr)) / (2.0 * ksnr)
    if alpha_req >= 1.0:
        return 0.0
    td = (0.423 * params.bandwidth * params.t0
          * math.log(alpha_req) / (f_d * math.log(params.kappa)))
    return min(td, td_cap)


def min_feasible_snr(pilots: int, corr_deficit: float, gamma_th: float) -> float:
    """Smallest SNR meeting the threshold for a given end-of-frame
    correlation deficit (1 - alpha).

    Solves the quadratic equivalent of effective-SNR == threshold for its
    unique positive root.  A nonnegative leading coefficient means the
    threshold is unreachable at any power for this frame structure.
    """
    if pilots < 1:
        raise ValueError("at least one pilot symbol is required")
    if not 0.0 <= corr_deficit < 1.0:
        raise ValueError("correlation deficit must lie in [0, 1)")
    if not gamma_th > 0.0:
        raise ValueError("threshold must be positive")
    k, b2 = pilots, corr_deficit
    lead = 2.0 * k * b2 * gamma_th + 2.0 * k * b2 - k
    if lead >= 0.0:
        raise FeasibilityError(
            "threshold unreachable at any power for this frame structure; "
            "reduce the data span or the pilot decorrelation",
            constraint="C1")
    lin = gamma_th * (k + 1.0)
    disc = lin * lin - 4.0 * lead * gamma_th
    if disc < 0.0:
        if disc > -1e-12 * lin * lin:
            disc = 0.0
        else:
            raise FeasibilityError("no real minimum-SNR root", constraint="C1")
    return (-lin - math.sqrt(disc)) / (2.0 * lead)


def min_power(pilots: int, corr_deficit: float, gamma_th: float,
              snr_per_watt: float) -> float:
    """Smallest transmit power (W) meeting the SNR threshold."""
    if not snr_per_watt > 0.0:
        raise ValueError("snr_per_watt must be positive")
    return min_feasible_snr(pilots, corr_deficit, gamma_th) / snr_per_watt
