"""Pairing <f, theta> split into a low-pass part and a wavelet part.

theta^ is cut by a smooth indicator chi (1 on |xi| <= sigma, 0 beyond a
radius strictly inside r). The low-frequency piece is paired against f * phi
after dividing by phi^(-xi); the rest goes through the scalograms of f and
theta_2 and the d y / y integral over (0, 1].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import fft as sp_fft

from zygmund.errors import DivisionError, ParameterError
from zygmund.kernels.glue import smooth_step
from zygmund.kernels.pairs import LPPair, admissibility_constant
from zygmund.kernels.wavelets import SpectralWavelet, meyer_wavelet
from zygmund.transform.grids import (
    SampledSignal,
    ScaleGrid,
    angular_frequencies,
    padded_length,
)

logger = logging.getLogger(__name__)

CUTOFF_FRACTION = 0.5
DIVISION_FLOOR = 1e-12
PAIRING_VOICES = 64


@dataclass
class PairingReport:
    value: float
    direct: float
    lowpass_term: float
    wavelet_term: float
    sigma: float
    cutoff_radius: float
    eta: str
    c: float

    @property
    def relative_error(self) -> float:
        if self.direct == 0.0:
            return abs(self.value)
        return abs(self.value - self.direct) / abs(self.direct)

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "direct": self.direct,
            "lowpass_term": self.lowpass_term,
            "wavelet_term": self.wavelet_term,
            "relative_error": self.relative_error,
            "sigma": self.sigma,
            "cutoff_radius": self.cutoff_radius,
            "eta": self.eta,
            "c": self.c,
        }


def cutoff_radius(pair: LPPair, fraction: float = CUTOFF_FRACTION) -> float:
    """Outer edge of supp chi: sigma + fraction * (r - sigma), strictly below r."""
    return pair.sigma + fraction * (pair.r - pair.sigma)


def smooth_indicator(xi: np.ndarray, sigma: float, radius: float) -> np.ndarray:
    return 1.0 - smooth_step((np.abs(xi) - sigma) / (radius - sigma))


def pairing_eta(pair: LPPair) -> tuple[SpectralWavelet, float]:
    """Reconstruction wavelet with supp eta^ inside |xi| <= sigma, and its constant.

    Scales y > 1 then see no frequency of theta_2, so the y-integral stops at 1.
    """
    if pair.eta.support_hi <= pair.sigma:
        return pair.eta, pair.c
    eta = meyer_wavelet(0.5 * pair.sigma, pair.sigma)
    c = admissibility_constant(pair.psi, eta)
    logger.debug("lp_pairing: %s reaches past sigma, using %s (c=%.6g)", pair.eta.name, eta.name, c)
    return eta, c


def _parseval(a: np.ndarray, b: np.ndarray, m: int, dt: float) -> np.ndarray:
    """dt * sum_t A(t) B(t) for real A, B from their rfft halves, along the last axis."""
    weights = np.full(a.shape[-1], 2.0)
    weights[0] = 1.0
    if m % 2 == 0:
        weights[-1] = 1.0
    return dt / m * np.real(np.sum(weights * a * np.conj(b), axis=-1))


def lp_pairing_report(
    f: SampledSignal,
    theta: SampledSignal,
    pair: LPPair,
    grid: ScaleGrid | None = None,
) -> PairingReport:
    if f.n != theta.n or not np.isclose(f.dt, theta.dt) or not np.isclose(f.t0, theta.t0):
        raise ParameterError("f and theta must share one sampling grid")
    f.require_transformable()
    grid = grid or ScaleGrid.default_for(f, voices=PAIRING_VOICES)
    if grid.y_max > 1.0:
        raise ParameterError(f"pairing integrates y over (0, 1], got y_max={grid.y_max}")
    grid.check_resolvable(f.dt)

    m = padded_length(f.n)
    xi = angular_frequencies(m, f.dt)
    radius = cutoff_radius(pair)
    chi = smooth_indicator(xi, pair.sigma, radius)

    phi_reflected = np.real(pair.phi(-xi))
    inside = chi > 0
    divisor = phi_reflected[inside]
    if np.min(np.abs(divisor), initial=np.inf) < DIVISION_FLOOR or (
        np.any(divisor > 0) and np.any(divisor < 0)
    ):
        raise DivisionError(f"{pair.phi.name} vanishes inside |xi| < {radius:g}")

    f_hat = sp_fft.rfft(f.samples, n=m)
    theta_hat = sp_fft.rfft(theta.samples, n=m)
    theta1_hat = np.zeros_like(theta_hat)
    theta1_hat[inside] = theta_hat[inside] * chi[inside] / phi_reflected[inside]
    theta2_hat = theta_hat * (1.0 - chi)

    smoothed = sp_fft.irfft(f_hat * pair.phi(xi), n=m)
    theta1 = sp_fft.irfft(theta1_hat, n=m)
    lowpass_term = float(f.dt * np.dot(smoothed, theta1))

    eta, c = pairing_eta(pair)
    scales = grid.values
    per_scale = np.empty(scales.size)
    for j, y in enumerate(scales):
        w_f = f_hat * np.conj(pair.psi(y * xi))
        w_theta = theta2_hat * eta(-y * xi)
        per_scale[j] = _parseval(w_f, w_theta, m, f.dt)
    wavelet_term = float(np.dot(grid.weights(), per_scale) / c)

    direct = float(f.dt * np.dot(f.samples, theta.samples))
    report = PairingReport(
        value=lowpass_term + wavelet_term,
        direct=direct,
        lowpass_term=lowpass_term,
        wavelet_term=wavelet_term,
        sigma=pair.sigma,
        cutoff_radius=radius,
        eta=eta.name,
        c=c,
    )
    logger.info(
        "lp_pairing(%s, %s): %.10g (direct %.10g, rel %.2e)",
        f.name, theta.name, report.value, direct, report.relative_error,
    )
    return report


def lp_pairing(
    f: SampledSignal,
    theta: SampledSignal,
    pair: LPPair,
    grid: ScaleGrid | None = None,
) -> float:
    """<f, theta> through the low-pass / wavelet split."""
    return lp_pairing_report(f, theta, pair, grid).value
