"""Pointwise regularity: mollified point values, cone scans and scalogram fits."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from sklearn.linear_model import LinearRegression

from zygmund.errors import (
    ConfigurationError,
    DegenerateSignalError,
    DomainError,
    GridError,
    ParameterError,
    ScaleError,
)
from zygmund.kernels.glue import glue
from zygmund.kernels.wavelets import SpectralWavelet
from zygmund.regularity.weights import CONST, SlowlyVaryingWeight
from zygmund.transform.cwt import PointEvaluator
from zygmund.transform.grids import (
    NYQUIST_FACTOR,
    SampledSignal,
    Scalogram,
    default_margin,
    interior_window,
)

logger = logging.getLogger(__name__)

DEFAULT_AGREEMENT_TOL = 1e-3
DEFAULT_CONE_ANGLES = 64
DEFAULT_Y_FLOOR = 0.05
DEFAULT_MIN_FIT_SCALES = 8
DEFAULT_MAX_DEGENERATE_FRACTION = 0.2
MIN_MOLLIFIER_DT = 4.0


# ---------------------------------------------------------------------------
# Point values
# ---------------------------------------------------------------------------


def _symmetric(t: np.ndarray) -> np.ndarray:
    return glue(1.0 - t**2)


def _left_skewed(t: np.ndarray) -> np.ndarray:
    return glue(1.0 - t**2) * (1.0 - t)


def _right_skewed(t: np.ndarray) -> np.ndarray:
    return glue(1.0 - t**2) * (1.0 + t)


MOLLIFIERS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "symmetric": _symmetric,
    "left": _left_skewed,
    "right": _right_skewed,
}


def mollified_means(f: SampledSignal, x0: float, eps: float) -> dict[str, float]:
    """<f, eps^-1 phi((t - x0)/eps)> for each mollifier, with discrete unit mass."""
    lo = max(0, int(math.floor((x0 - eps - f.t0) / f.dt)))
    hi = min(f.n, int(math.ceil((x0 + eps - f.t0) / f.dt)) + 1)
    t = (f.t[lo:hi] - x0) / eps
    samples = f.samples[lo:hi]
    means = {}
    for name, phi in MOLLIFIERS.items():
        weights = phi(t)
        means[name] = float(np.dot(weights, samples) / weights.sum())
    return means


def point_value(
    f: SampledSignal,
    x0: float,
    eps_grid: ArrayLike,
    tol: float = DEFAULT_AGREEMENT_TOL,
) -> float | None:
    """Value of f at x0 as the common limit of three mollified means, or None."""
    eps = np.sort(np.asarray(eps_grid, dtype=float))[::-1]
    if eps.size < 3:
        raise ParameterError("point_value needs at least three eps values")
    if eps[-1] < MIN_MOLLIFIER_DT * f.dt:
        raise ParameterError(
            f"smallest eps {eps[-1]:g} is below {MIN_MOLLIFIER_DT:g} * dt = {MIN_MOLLIFIER_DT * f.dt:g}"
        )
    if not (f.t0 + eps[0] <= x0 <= f.t1 - eps[0]):
        raise DomainError(f"x0={x0} is not in the interior [{f.t0 + eps[0]}, {f.t1 - eps[0]}]")

    history = {name: [] for name in MOLLIFIERS}
    for e in eps:
        for name, mean in mollified_means(f, x0, float(e)).items():
            history[name].append(mean)

    tails = {name: np.asarray(values[-3:]) for name, values in history.items()}
    converged = all(np.ptp(tail) <= tol for tail in tails.values())
    limits = np.array([tail[-1] for tail in tails.values()])
    agree = bool(np.ptp(limits) <= tol)
    logger.debug("point_value(x0=%g): limits %s, converged=%s", x0, limits, converged)
    if not (converged and agree):
        logger.info("point_value(x0=%g): no value", x0)
        return None
    return float(limits.mean())


# ---------------------------------------------------------------------------
# Log-log regression
# ---------------------------------------------------------------------------


def _design(y: np.ndarray, log_basis: bool) -> np.ndarray:
    log_y = np.log(y)
    if log_basis:
        return np.column_stack([log_y, np.log1p(np.abs(log_y))])
    return log_y[:, None]


def _regress(x: np.ndarray, target: np.ndarray) -> tuple[np.ndarray, float, float]:
    model = LinearRegression().fit(x, target)
    residuals = target - model.predict(x)
    rms = float(np.sqrt(np.mean(residuals**2)))
    return np.asarray(model.coef_, dtype=float), float(model.intercept_), rms


def loglog_slope(eps: np.ndarray, values: np.ndarray) -> float | None:
    """Slope of log values against log eps; None when a value is not positive."""
    if values.size < 2 or np.any(values <= 0):
        return None
    coef, _, _ = _regress(np.log(eps)[:, None], np.log(values))
    return float(coef[0])


# ---------------------------------------------------------------------------
# Cone scan
# ---------------------------------------------------------------------------


@dataclass
class ConeScanResult:
    x0: float
    alpha: float
    weight: str
    k: int
    eps_grid: list[float]
    sup_values: list[float]
    limsup_estimate: float
    slope: float | None
    angles: int
    excluded_angles: int
    y_floor: float

    @property
    def growth(self) -> float | None:
        """-slope: positive when the weighted sups grow as eps shrinks."""
        return None if self.slope is None else -self.slope

    def to_dict(self) -> dict[str, Any]:
        return {
            "x0": self.x0,
            "alpha": self.alpha,
            "weight": self.weight,
            "k": self.k,
            "eps_grid": list(self.eps_grid),
            "sup_values": list(self.sup_values),
            "limsup_estimate": self.limsup_estimate,
            "slope": self.slope,
            "angles": self.angles,
            "excluded_angles": self.excluded_angles,
            "y_floor": self.y_floor,
        }


def half_circle(angles: int, y_floor: float) -> tuple[np.ndarray, np.ndarray, int]:
    """Points (cos a, sin a) on the upper half circle with sin a >= y_floor."""
    theta = np.linspace(0.0, np.pi, angles)
    x, y = np.cos(theta), np.sin(theta)
    keep = y >= y_floor
    return x[keep], y[keep], int(angles - keep.sum())


def cone_scan(
    f: SampledSignal,
    psi: SpectralWavelet,
    x0: float,
    alpha: float,
    weight: SlowlyVaryingWeight = CONST,
    k: int = 1,
    eps_grid: ArrayLike = (),
    angles: int = DEFAULT_CONE_ANGLES,
    y_floor: float = DEFAULT_Y_FLOOR,
) -> ConeScanResult:
    """sup over the half circle of y^k |W_psi f(x0 + eps x, eps y)| / (eps^alpha L(eps))."""
    if psi.vanishing_moments < math.floor(alpha):
        raise ConfigurationError(
            f"{psi.name} has vanishing moments through {psi.vanishing_moments}, "
            f"alpha={alpha} needs {math.floor(alpha)}"
        )
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    eps = np.sort(np.asarray(eps_grid, dtype=float))[::-1]
    if eps.size == 0:
        raise ParameterError("cone_scan needs a nonempty eps grid")
    if eps[0] > 1 or eps[-1] <= 0:
        raise DomainError(f"eps must lie in (0, 1], got [{eps[-1]}, {eps[0]}]")

    x, y, excluded = half_circle(angles, y_floor)
    if eps[-1] * y.min() < NYQUIST_FACTOR * f.dt * (1 - 1e-12):
        raise ScaleError(
            f"eps * y = {eps[-1] * y.min():.4g} is below the Nyquist guard {NYQUIST_FACTOR * f.dt:.4g}"
        )
    if excluded:
        logger.warning("cone_scan: %d of %d angles fall below y_floor=%g", excluded, angles, y_floor)

    evaluate = PointEvaluator(f, psi)
    sups = np.empty(eps.size)
    for i, e in enumerate(eps):
        w = evaluate(x0 + e * x, e * y)
        sups[i] = float(np.max(y**k * np.abs(w))) / (e**alpha * float(weight(e)))

    tail = max(1, math.ceil(eps.size / 3))
    result = ConeScanResult(
        x0=x0,
        alpha=alpha,
        weight=weight.name,
        k=k,
        eps_grid=eps.tolist(),
        sup_values=sups.tolist(),
        limsup_estimate=float(np.max(sups[-tail:])),
        slope=loglog_slope(eps, sups),
        angles=angles,
        excluded_angles=excluded,
        y_floor=y_floor,
    )
    logger.info(
        "cone_scan(x0=%g, alpha=%g, k=%d): limsup %.4g, slope %s",
        x0, alpha, k, result.limsup_estimate, result.slope,
    )
    return result


# ---------------------------------------------------------------------------
# Scalogram fits
# ---------------------------------------------------------------------------


@dataclass
class RegularityReport:
    """log M(y) = c + alpha log y + beta log(1 + |log y|), fitted over a scale range."""

    alpha_hat: float
    beta_hat: float
    residual: float
    scale_range: tuple[float, float]
    mode: str = "global"
    x0: float | None = None
    intercept: float = 0.0
    n_scales: int = 0
    log_basis: bool = False
    maxima: list[float] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha_hat": self.alpha_hat,
            "beta_hat": self.beta_hat,
            "residual": self.residual,
            "scale_range": list(self.scale_range),
            "mode": self.mode,
            "x0": self.x0,
            "intercept": self.intercept,
            "n_scales": self.n_scales,
            "log_basis": self.log_basis,
        }


def _fit_maxima(
    y: np.ndarray,
    maxima: np.ndarray,
    log_basis: bool,
    mode: str,
    x0: float | None = None,
) -> RegularityReport:
    positive = maxima > 0
    if np.mean(~positive) > DEFAULT_MAX_DEGENERATE_FRACTION:
        raise DegenerateSignalError(
            f"scalogram maximum vanishes on {int((~positive).sum())} of {y.size} scales"
        )
    y_fit, m_fit = y[positive], maxima[positive]
    coef, intercept, rms = _regress(_design(y_fit, log_basis), np.log(m_fit))
    report = RegularityReport(
        alpha_hat=float(coef[0]),
        beta_hat=float(coef[1]) if log_basis else 0.0,
        residual=rms,
        scale_range=(float(y_fit.min()), float(y_fit.max())),
        mode=mode,
        x0=x0,
        intercept=intercept,
        n_scales=int(y_fit.size),
        log_basis=log_basis,
        maxima=maxima.tolist(),
    )
    logger.info(
        "%s fit: alpha_hat=%.4f beta_hat=%.4f residual=%.3g over %d scales",
        mode, report.alpha_hat, report.beta_hat, rms, report.n_scales,
    )
    return report


def _selected_scales(
    scalogram: Scalogram, scale_range: tuple[float, float] | None
) -> np.ndarray:
    mask = scalogram.scale_mask(scale_range)
    if int(mask.sum()) < DEFAULT_MIN_FIT_SCALES:
        raise ParameterError(
            f"scale range {scale_range} holds {int(mask.sum())} scales, "
            f"need at least {DEFAULT_MIN_FIT_SCALES}"
        )
    return mask


def fit_regularity(
    scalogram: Scalogram,
    log_basis: bool = False,
    scale_range: tuple[float, float] | None = None,
    margin: float | None = None,
) -> RegularityReport:
    """Fit the growth of M(y) = max over the interior of |W(x, y)|."""
    mask = _selected_scales(scalogram, scale_range)
    y = scalogram.scales[mask]
    margin = default_margin(float(y.max())) if margin is None else margin
    window = interior_window(scalogram.n_x, scalogram.dt, margin)
    maxima = np.max(np.abs(scalogram.values[window][:, mask]), axis=0)
    return _fit_maxima(y, maxima, log_basis, "global")


def pointwise_fit(
    scalogram: Scalogram,
    x0: float,
    cone_width: float = 1.0,
    log_basis: bool = False,
    scale_range: tuple[float, float] | None = None,
) -> RegularityReport:
    """As fit_regularity with M(y) = max over the cone |x - x0| <= cone_width * y."""
    if cone_width <= 0:
        raise ParameterError(f"cone width must be positive, got {cone_width}")
    mask = _selected_scales(scalogram, scale_range)
    x = scalogram.x
    maxima = []
    for j in np.flatnonzero(mask):
        inside = np.abs(x - x0) <= cone_width * scalogram.scales[j]
        if not np.any(inside):
            raise GridError(
                f"cone around x0={x0} is empty at scale {scalogram.scales[j]:.4g}"
            )
        maxima.append(np.max(np.abs(scalogram.values[inside, j])))
    return _fit_maxima(scalogram.scales[mask], np.asarray(maxima), log_basis, "pointwise", x0)
