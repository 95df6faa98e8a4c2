"""Fourier multipliers on zero-padded grids: low-pass, Bessel potential, derivatives."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

import numpy as np
from scipy import fft as sp_fft

from zygmund.errors import ParameterError
from zygmund.kernels.wavelets import LowPass
from zygmund.transform.grids import SampledSignal, angular_frequencies, padded_length

logger = logging.getLogger(__name__)

Multiplier = Callable[[np.ndarray], np.ndarray]


def apply_multiplier(
    f: SampledSignal,
    multiplier: Multiplier,
    name: str | None = None,
    workers: int | None = None,
) -> SampledSignal:
    """irfft(rfft(f) * m(xi))[:n]; the half spectrum keeps the result real."""
    m = padded_length(f.n)
    xi = angular_frequencies(m, f.dt)
    spectrum = sp_fft.rfft(f.samples, n=m, workers=workers) * multiplier(xi)
    samples = sp_fft.irfft(spectrum, n=m, workers=workers)[: f.n]
    return f.with_samples(samples, name=name or f.name)


def lowpass(f: SampledSignal, phi: LowPass) -> SampledSignal:
    """f * phi."""
    return apply_multiplier(f, phi, name=f"{f.name}*{phi.name}")


def bessel_potential(f: SampledSignal, beta: float) -> SampledSignal:
    """(1 - Delta)^(beta/2) f, multiplier (1 + xi^2)^(beta/2)."""
    if not math.isfinite(beta):
        raise ParameterError(f"beta must be finite, got {beta}")
    if beta == 0:
        return f.with_samples(f.samples.copy())
    return apply_multiplier(
        f, lambda xi: (1.0 + xi**2) ** (0.5 * beta), name=f"J^{beta:g}({f.name})"
    )


def derivative(f: SampledSignal, order: int = 1) -> SampledSignal:
    """Spectral d^order f / dt^order, multiplier (i xi)^order."""
    if order < 0:
        raise ParameterError(f"derivative order must be >= 0, got {order}")
    if order == 0:
        return f.with_samples(f.samples.copy())
    return apply_multiplier(f, lambda xi: (1j * xi) ** order, name=f"D^{order}({f.name})")


def laplacian(f: SampledSignal) -> SampledSignal:
    """Spectral Laplacian, multiplier -xi^2."""
    return apply_multiplier(f, lambda xi: -(xi**2), name=f"lap({f.name})")
