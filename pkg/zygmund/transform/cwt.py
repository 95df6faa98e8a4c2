"""Forward continuous wavelet transform, synthesis and reconstruction.

Everything runs on the Fourier side: the signal is zero padded to
``padded_length(n)``, multiplied by the dilated wavelet spectrum and brought
back with an inverse real FFT, which keeps the output real.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy import fft as sp_fft

from zygmund.errors import ConfigurationError, ShapeError
from zygmund.kernels.pairs import LPPair
from zygmund.kernels.wavelets import SpectralWavelet
from zygmund.transform.grids import (
    SampledSignal,
    ScaleGrid,
    Scalogram,
    angular_frequencies,
    default_margin,
    interior_window,
    padded_length,
)

logger = logging.getLogger(__name__)

SCALE_CHUNK = 16


def _hermitian_weights(m: int) -> np.ndarray:
    """Multiplicity of each rfft bin in the full spectrum."""
    weights = np.full(m // 2 + 1, 2.0)
    weights[0] = 1.0
    if m % 2 == 0:
        weights[-1] = 1.0
    return weights


def cwt_forward(
    f: SampledSignal,
    psi: SpectralWavelet,
    grid: ScaleGrid | None = None,
    workers: int | None = None,
) -> Scalogram:
    """W_psi f(x_i, y_j) = (f * psi_{y_j}^~)(x_i) on the signal's own grid."""
    f.require_transformable()
    grid = grid or ScaleGrid.default_for(f)
    grid.check_resolvable(f.dt)

    m = padded_length(f.n)
    xi = angular_frequencies(m, f.dt)
    spectrum = sp_fft.rfft(f.samples, n=m)
    scales = grid.values
    out = np.empty((f.n, scales.size))

    for start in range(0, scales.size, SCALE_CHUNK):
        block = scales[start : start + SCALE_CHUNK]
        kernel = np.conj(psi(np.outer(block, xi)))
        rows = sp_fft.irfft(spectrum[None, :] * kernel, n=m, axis=-1, workers=workers)
        out[:, start : start + block.size] = rows[:, : f.n].T

    logger.debug(
        "cwt_forward: %s, n=%d, %d scales in [%.4g, %.4g], padded to %d",
        psi.name, f.n, scales.size, scales[-1], scales[0], m,
    )
    return Scalogram(out, f.t0, f.dt, scales, grid.voices, psi.name)


def synthesize(
    scalogram: Scalogram,
    eta: SpectralWavelet,
    like: SampledSignal | None = None,
    workers: int | None = None,
) -> SampledSignal:
    """sum_j w_j (Phi(., y_j) * eta_{y_j})(x), trapezoid in ln y.

    Linear in the scalogram; the 1/c normalisation is left to the caller.
    """
    n = scalogram.n_x
    if like is not None and (
        like.n != n
        or not math.isclose(like.dt, scalogram.dt, rel_tol=1e-12)
        or not math.isclose(like.t0, scalogram.t0, rel_tol=1e-12, abs_tol=1e-12 * like.dt)
    ):
        raise ShapeError(
            f"scalogram grid (n={n}, t0={scalogram.t0}, dt={scalogram.dt}) does not match "
            f"signal grid (n={like.n}, t0={like.t0}, dt={like.dt})"
        )

    m = padded_length(n)
    xi = angular_frequencies(m, scalogram.dt)
    weights = scalogram.weights()
    acc = np.zeros(xi.size, dtype=complex)
    for start in range(0, scalogram.n_scales, SCALE_CHUNK):
        stop = min(start + SCALE_CHUNK, scalogram.n_scales)
        spectra = sp_fft.rfft(scalogram.values[:, start:stop].T, n=m, axis=-1, workers=workers)
        kernel = eta(np.outer(scalogram.scales[start:stop], xi))
        acc += np.einsum("j,jk->k", weights[start:stop], spectra * kernel)

    samples = sp_fft.irfft(acc, n=m, workers=workers)[:n]
    name = like.name if like is not None else f"synth({eta.name})"
    return SampledSignal(samples, scalogram.t0, scalogram.dt, name)


def relative_interior_error(
    f: SampledSignal, g: SampledSignal, window: slice
) -> float:
    """sup |g - f| / sup |f| over ``window``; 0 when both vanish."""
    reference = float(np.max(np.abs(f.samples[window])))
    error = float(np.max(np.abs(g.samples[window] - f.samples[window])))
    if reference == 0.0:
        return 0.0 if error == 0.0 else math.inf
    return error / reference


def reconstruct(
    f: SampledSignal,
    pair: LPPair,
    grid: ScaleGrid | None = None,
    margin: float | None = None,
    workers: int | None = None,
) -> tuple[SampledSignal, float]:
    """(1/c) synthesize(W_psi f, eta) with its relative sup error on the interior."""
    if not math.isfinite(pair.c) or pair.c == 0.0:
        raise ConfigurationError(f"pair {pair.name} has unusable admissibility constant {pair.c}")
    f.require_transformable()
    grid = grid or ScaleGrid.default_for(f)
    margin = default_margin(grid.y_max) if margin is None else margin
    window = interior_window(f.n, f.dt, margin)

    scalogram = cwt_forward(f, pair.psi, grid, workers=workers)
    synthesized = synthesize(scalogram, pair.eta, like=f, workers=workers)
    g = synthesized.with_samples(synthesized.samples / pair.c, name=f"{f.name}:reconstructed")
    error = relative_interior_error(f, g, window)
    logger.info(
        "reconstruct: %s with %s, %d voices, interior error %.3e",
        f.name, pair.name, grid.voices, error,
    )
    return g, error


class PointEvaluator:
    """Evaluates W_psi f at arbitrary (x, y) from the padded spectrum of f.

    Off-grid points use the trigonometric interpolant of the padded transform.
    """

    def __init__(self, f: SampledSignal, psi: SpectralWavelet) -> None:
        f.require_transformable()
        self.signal = f
        self.psi = psi
        self.m = padded_length(f.n)
        self.xi = angular_frequencies(self.m, f.dt)
        self._spectrum = sp_fft.rfft(f.samples, n=self.m) * _hermitian_weights(self.m) / self.m

    def __call__(self, x: np.ndarray | float, y: np.ndarray | float) -> np.ndarray:
        x_arr, y_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        flat_x, flat_y = x_arr.ravel(), y_arr.ravel()
        out = np.empty(flat_x.size)
        for start in range(0, flat_x.size, SCALE_CHUNK):
            xs = flat_x[start : start + SCALE_CHUNK, None]
            ys = flat_y[start : start + SCALE_CHUNK, None]
            phase = np.exp(1j * self.xi[None, :] * (xs - self.signal.t0))
            terms = self._spectrum[None, :] * np.conj(self.psi(ys * self.xi[None, :])) * phase
            out[start : start + xs.shape[0]] = np.real(terms.sum(axis=1))
        return out.reshape(x_arr.shape)


def cwt_point(f: SampledSignal, psi: SpectralWavelet, x: float, y: float) -> float:
    """Single-point W_psi f(x, y) by direct Fourier evaluation."""
    return float(PointEvaluator(f, psi)(x, y))
