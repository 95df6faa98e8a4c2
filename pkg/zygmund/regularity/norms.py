"""Weighted Zygmund, Hoelder and second-difference norms, plus the Schwartz seminorms.

Every supremum is a maximum over a declared grid: the interior window in
space, the scale grid in y, and lags on the sample lattice for differences.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import fft as sp_fft

from zygmund.errors import ConfigurationError, DomainError, ParameterError
from zygmund.kernels.pairs import LPPair, validate_lp_pair
from zygmund.regularity.weights import CONST, SlowlyVaryingWeight
from zygmund.transform.cwt import cwt_forward
from zygmund.transform.grids import (
    SampledSignal,
    ScaleGrid,
    Scalogram,
    angular_frequencies,
    default_margin,
    interior_window,
    padded_length,
)
from zygmund.transform.multipliers import derivative, lowpass

logger = logging.getLogger(__name__)

DEFAULT_MAX_PAIRS = 2_000_000
DEFAULT_REFINEMENT_TOL = 0.05
DEFAULT_DIFFERENCE_MARGIN = 8.0
DENSE_LAGS = 64


@dataclass
class NormReport:
    """A norm value, its named parts and where each part peaks."""

    name: str
    value: float
    components: dict[str, float] = field(default_factory=dict)
    argmax: dict[str, dict[str, float]] = field(default_factory=dict)
    grid: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "value": self.value,
            "components": dict(self.components),
            "argmax": {key: dict(loc) for key, loc in self.argmax.items()},
            "grid": dict(self.grid),
        }


def refinement_ratio(coarse: float, fine: float) -> float:
    """Relative change of a grid supremum when the resolution doubles."""
    if coarse == fine:
        return 0.0
    if coarse == 0.0:
        return math.inf
    return abs(fine - coarse) / abs(coarse)


def is_refinement_stable(
    coarse: float, fine: float, tol: float = DEFAULT_REFINEMENT_TOL
) -> bool:
    return refinement_ratio(coarse, fine) < tol


def _sup(values: np.ndarray, t: np.ndarray) -> tuple[float, float]:
    if values.size == 0:
        return 0.0, math.nan
    i = int(np.argmax(np.abs(values)))
    return float(abs(values[i])), float(t[i])


# ---------------------------------------------------------------------------
# Zygmund norm
# ---------------------------------------------------------------------------


def zygmund_norm(
    f: SampledSignal,
    pair: LPPair,
    weight: SlowlyVaryingWeight = CONST,
    alpha: float = 0.5,
    grid: ScaleGrid | None = None,
    margin: float | None = None,
    scalogram: Scalogram | None = None,
) -> NormReport:
    """sup |f * phi| + max |W_psi f(x, y)| / (y^alpha L(y)) over the interior."""
    validation = validate_lp_pair(pair, alpha)
    if not validation.passed:
        failed = [check.name for check in validation.checks if not check.passed]
        raise ConfigurationError(f"pair {pair.name} is not an LP pair of order {alpha}: {failed}")
    grid = grid or ScaleGrid.default_for(f)
    if grid.y_max > 1.0:
        raise ParameterError(f"the Zygmund norm takes y in (0, 1], got y_max={grid.y_max}")
    margin = default_margin(grid.y_max) if margin is None else margin
    window = interior_window(f.n, f.dt, margin)
    t = f.t[window]

    smoothed = lowpass(f, pair.phi).samples[window]
    lowpass_sup, lowpass_at = _sup(smoothed, t)

    scalogram = scalogram if scalogram is not None else cwt_forward(f, pair.psi, grid)
    y = scalogram.scales
    quotient = np.abs(scalogram.values[window]) / (y**alpha * weight(y))
    i, j = np.unravel_index(int(np.argmax(quotient)), quotient.shape)
    wavelet_sup = float(quotient[i, j])

    report = NormReport(
        name="zygmund",
        value=lowpass_sup + wavelet_sup,
        components={"lowpass_sup": lowpass_sup, "wavelet_sup": wavelet_sup},
        argmax={
            "lowpass_sup": {"x": lowpass_at},
            "wavelet_sup": {"x": float(t[i]), "y": float(y[j])},
        },
        grid={
            **grid.to_dict(),
            "n_scales": int(y.size),
            "margin": margin,
            "alpha": alpha,
            "weight": weight.to_dict(),
            "pair": pair.name,
        },
    )
    logger.info(
        "zygmund_norm(%s, alpha=%g, %s): %.6g (lowpass %.6g, wavelet %.6g)",
        f.name, alpha, weight.name, report.value, lowpass_sup, wavelet_sup,
    )
    return report


# ---------------------------------------------------------------------------
# Difference norms
# ---------------------------------------------------------------------------


def _lags(max_lag: int, points: int, max_pairs: int) -> tuple[np.ndarray, int]:
    """Lags 1..max_lag, thinned beyond the first DENSE_LAGS when too many pairs."""
    stride = max(1, math.ceil(points * max_lag / max_pairs))
    if stride == 1:
        return np.arange(1, max_lag + 1), 1
    dense = np.arange(1, min(max_lag, DENSE_LAGS) + 1)
    sparse = np.arange(1, max_lag + 1, stride)
    lags = np.unique(np.concatenate([dense, sparse, [max_lag]]))
    logger.warning("difference norm: %d pairs, lag stride %d", points * max_lag, stride)
    return lags, stride


def _derivative_sups(
    f: SampledSignal, order: int, window: slice
) -> tuple[list[np.ndarray], dict[str, float], dict[str, dict[str, float]]]:
    t = f.t[window]
    derivatives, components, argmax = [], {}, {}
    for m in range(order + 1):
        g = derivative(f, m).samples
        derivatives.append(g)
        components[f"derivative_{m}_sup"], at = _sup(g[window], t)
        argmax[f"derivative_{m}_sup"] = {"t": at}
    return derivatives, components, argmax


def holder_norm(
    f: SampledSignal,
    weight: SlowlyVaryingWeight = CONST,
    alpha: float = 0.5,
    margin: float = DEFAULT_DIFFERENCE_MARGIN,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> NormReport:
    """Sum of derivative sups plus the weighted first-difference quotient of the top one.

    Integer alpha = p + 1 uses exponent 1 on the p-th derivative.
    """
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError(f"holder_norm needs alpha > 0, got {alpha}")
    if float(alpha).is_integer():
        order, exponent = int(alpha) - 1, 1.0
    else:
        order = math.floor(alpha)
        exponent = alpha - order
    window = interior_window(f.n, f.dt, margin)
    derivatives, components, argmax = _derivative_sups(f, order, window)

    g = derivatives[-1]
    start, stop = window.start, window.stop
    max_lag = min(int(math.floor(1.0 / f.dt + 1e-9)), stop - start - 1)
    lags, stride = _lags(max_lag, stop - start, max_pairs)
    best, best_t, best_h = 0.0, math.nan, math.nan
    for k in lags:
        h = k * f.dt
        diffs = np.abs(g[start + k : stop] - g[start : stop - k])
        if diffs.size == 0:
            continue
        i = int(np.argmax(diffs))
        q = float(diffs[i]) / (h**exponent * float(weight(h)))
        if q > best:
            best, best_t, best_h = q, f.t0 + (start + i) * f.dt, h
    components["difference_sup"] = best
    argmax["difference_sup"] = {"t": best_t, "h": best_h}

    report = NormReport(
        name="holder",
        value=float(sum(components.values())),
        components=components,
        argmax=argmax,
        grid={
            "dt": f.dt,
            "margin": margin,
            "alpha": alpha,
            "order": order,
            "exponent": exponent,
            "lag_stride": stride,
            "n_lags": int(lags.size),
            "weight": weight.to_dict(),
        },
    )
    logger.info("holder_norm(%s, alpha=%g): %.6g", f.name, alpha, report.value)
    return report


def second_difference_norm(
    f: SampledSignal,
    weight: SlowlyVaryingWeight = CONST,
    p: int = 0,
    margin: float = DEFAULT_DIFFERENCE_MARGIN,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> NormReport:
    """Derivative sups through p plus sup |g(t+h) + g(t-h) - 2 g(t)| / (h L(h)), g = f^(p)."""
    if p < 0:
        raise ParameterError(f"p must be >= 0, got {p}")
    window = interior_window(f.n, f.dt, margin)
    derivatives, components, argmax = _derivative_sups(f, p, window)

    g = derivatives[-1]
    start, stop = window.start, window.stop
    max_lag = min(int(math.floor(1.0 / f.dt + 1e-9)), start, f.n - stop)
    if max_lag < 1:
        raise ParameterError("margin must leave at least one lag on each side of the interior")
    lags, stride = _lags(max_lag, stop - start, max_pairs)
    best, best_t, best_h = 0.0, math.nan, math.nan
    centre = g[start:stop]
    for k in lags:
        h = k * f.dt
        diffs = np.abs(g[start + k : stop + k] + g[start - k : stop - k] - 2.0 * centre)
        i = int(np.argmax(diffs))
        q = float(diffs[i]) / (h * float(weight(h)))
        if q > best:
            best, best_t, best_h = q, f.t0 + (start + i) * f.dt, h
    components["difference_sup"] = best
    argmax["difference_sup"] = {"t": best_t, "h": best_h}

    report = NormReport(
        name="second_difference",
        value=float(sum(components.values())),
        components=components,
        argmax=argmax,
        grid={
            "dt": f.dt,
            "margin": margin,
            "p": p,
            "lag_stride": stride,
            "n_lags": int(lags.size),
            "weight": weight.to_dict(),
        },
    )
    logger.info("second_difference_norm(%s, p=%d): %.6g", f.name, p, report.value)
    return report


# ---------------------------------------------------------------------------
# Seminorms
# ---------------------------------------------------------------------------


def schwartz_seminorm(f: SampledSignal, k: int, m: int) -> float:
    """max over the samples of (1 + t^2)^(k/2) |f^(m)(t)|."""
    if k < 0 or m < 0:
        raise ParameterError(f"k and m must be >= 0, got k={k}, m={m}")
    g = derivative(f, m).samples
    return float(np.max((1.0 + f.t**2) ** (0.5 * k) * np.abs(g)))


def halfspace_seminorm(scalogram: Scalogram, l: int, k: int, nu: int, m: int) -> float:  # noqa: E741
    """max of (y^l + y^-l)(1 + x^2)^(k/2) |d_y^nu d_x^m Phi(x, y)|.

    d_x is spectral along x; d_y = y^-1 d/d(ln y) by central differences.
    """
    if min(l, k, nu, m) < 0:
        raise ParameterError("seminorm indices must be >= 0")
    values = scalogram.values
    if m > 0:
        size = padded_length(scalogram.n_x)
        xi = angular_frequencies(size, scalogram.dt)
        spectrum = sp_fft.rfft(values, n=size, axis=0) * ((1j * xi) ** m)[:, None]
        values = sp_fft.irfft(spectrum, n=size, axis=0)[: scalogram.n_x]
    y = scalogram.scales
    if nu > 0:
        if y.size < 3:
            raise ParameterError("scale derivatives need at least three scales")
        log_y = np.log(y)
        for _ in range(nu):
            values = np.gradient(values, log_y, axis=1) / y[None, :]
    x = scalogram.x
    factor = (y**l + y ** (-l))[None, :] * ((1.0 + x**2) ** (0.5 * k))[:, None]
    return float(np.max(factor * np.abs(values)))
