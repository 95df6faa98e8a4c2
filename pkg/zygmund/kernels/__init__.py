"""Fourier-side constructions: wavelets, low-pass windows and Littlewood-Paley pairs."""

from zygmund.kernels.factory import build_pair, build_wavelet
from zygmund.kernels.pairs import (
    LPPair,
    ValidationReport,
    admissibility_constant,
    build_lp_pair,
    laplacian_pair,
    make_meyer_lp_pair,
    validate_lp_pair,
)
from zygmund.kernels.wavelets import (
    LowPass,
    SpectralWavelet,
    derivative_wavelet,
    dilate_wavelet,
    laplacian_wavelet,
    make_band_bump,
    make_gaussian_derivative,
    meyer_lowpass,
    meyer_wavelet,
    moment,
    nondegeneracy_index,
)

__all__ = [
    "LPPair",
    "LowPass",
    "SpectralWavelet",
    "ValidationReport",
    "admissibility_constant",
    "build_lp_pair",
    "build_pair",
    "build_wavelet",
    "derivative_wavelet",
    "dilate_wavelet",
    "laplacian_pair",
    "laplacian_wavelet",
    "make_band_bump",
    "make_gaussian_derivative",
    "make_meyer_lp_pair",
    "meyer_lowpass",
    "meyer_wavelet",
    "moment",
    "nondegeneracy_index",
    "validate_lp_pair",
]
