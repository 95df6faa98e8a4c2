"""Build wavelets and LP pairs from their JSON specs ({"kind": ..., params...})."""

from __future__ import annotations

from typing import Any

from zygmund.errors import ParameterError
from zygmund.kernels.pairs import LPPair, laplacian_pair, make_meyer_lp_pair
from zygmund.kernels.wavelets import (
    SpectralWavelet,
    laplacian_wavelet,
    make_band_bump,
    make_gaussian_derivative,
    meyer_wavelet,
)

DEFAULT_PAIR_SPEC: dict[str, Any] = {"kind": "meyer", "xi_pass": 0.5, "xi_stop": 1.0}
# Plateau on [1, 8]: three octaves per scale
DEFAULT_WAVELET_SPEC: dict[str, Any] = {"kind": "bandbump", "a": 1.0, "b": 8.0}


def _kind(spec: dict[str, Any]) -> str:
    return str(spec.get("kind") or "meyer").lower().strip()


def build_wavelet(spec: dict[str, Any]) -> SpectralWavelet:
    """Return the wavelet described by ``spec``.

    Kinds: meyer (xi_pass, xi_stop), bandbump (a, b), gaussian_derivative (order),
    laplacian (of: nested spec).
    """
    kind = _kind(spec)
    try:
        if kind == "meyer":
            return meyer_wavelet(float(spec.get("xi_pass", 0.5)), float(spec.get("xi_stop", 1.0)))
        if kind == "bandbump":
            return make_band_bump(float(spec.get("a", 1.0)), float(spec.get("b", 2.0)))
        if kind == "gaussian_derivative":
            return make_gaussian_derivative(int(spec.get("order", 1)))
        if kind == "laplacian":
            return laplacian_wavelet(build_wavelet(spec.get("of") or {}))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"invalid wavelet spec {spec!r}: {exc}") from exc
    raise ParameterError(f"unknown wavelet kind {kind!r}")


def build_pair(spec: dict[str, Any] | None = None) -> LPPair:
    """Return the LP pair described by ``spec`` (meyer, or laplacian of a nested pair)."""
    spec = spec or DEFAULT_PAIR_SPEC
    kind = _kind(spec)
    try:
        if kind == "meyer":
            return make_meyer_lp_pair(
                float(spec.get("xi_pass", 0.5)), float(spec.get("xi_stop", 1.0))
            )
        if kind == "laplacian":
            return laplacian_pair(build_pair(spec.get("of")))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"invalid pair spec {spec!r}: {exc}") from exc
    raise ParameterError(f"unknown pair kind {kind!r}")
