"""Wavelet transform, synthesis and Fourier multipliers on padded grids."""

from zygmund.transform.cwt import (
    PointEvaluator,
    cwt_forward,
    cwt_point,
    reconstruct,
    relative_interior_error,
    synthesize,
)
from zygmund.transform.grids import (
    SampledSignal,
    ScaleGrid,
    Scalogram,
    interior_window,
)
from zygmund.transform.multipliers import (
    apply_multiplier,
    bessel_potential,
    derivative,
    laplacian,
    lowpass,
)
from zygmund.transform.pairing import PairingReport, lp_pairing, lp_pairing_report

__all__ = [
    "PairingReport",
    "PointEvaluator",
    "SampledSignal",
    "ScaleGrid",
    "Scalogram",
    "apply_multiplier",
    "bessel_potential",
    "cwt_forward",
    "cwt_point",
    "derivative",
    "interior_window",
    "laplacian",
    "lowpass",
    "lp_pairing",
    "lp_pairing_report",
    "reconstruct",
    "relative_interior_error",
    "synthesize",
]
