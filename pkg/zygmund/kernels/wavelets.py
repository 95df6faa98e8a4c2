"""Wavelets and low-pass windows defined by closed-form Fourier transforms.

Convention: f^(xi) = int f(t) exp(-i xi t) dt, so that the moments satisfy
mu_m = int t^m f(t) dt = i^m (d^m f^ / d xi^m)(0).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import simpson
from scipy.optimize import brentq
from scipy.special import comb

from zygmund.errors import NumericError, ParameterError
from zygmund.kernels.glue import plateau, smooth_step, smooth_step_prime

if TYPE_CHECKING:
    from zygmund.transform.grids import SampledSignal

logger = logging.getLogger(__name__)

FourierMap = Callable[[np.ndarray], np.ndarray]

DEFAULT_NONDEGENERACY_TOL = 1e-9
DEFAULT_SCAN_POINTS = 4096
DEFAULT_UNBOUNDED_SCAN = 64.0
DEFAULT_MOMENT_STEP = 1e-3
DEFAULT_MOMENT_RTOL = 1e-6


@dataclass(frozen=True)
class SpectralWavelet:
    """A wavelet psi given through its Fourier transform psi^."""

    name: str
    fhat: FourierMap
    support_lo: float = 0.0
    support_hi: float = math.inf
    vanishing_moments: float = 0.0
    tau: float = 0.0
    params: dict[str, Any] = field(default_factory=dict, compare=False)

    def __call__(self, xi: ArrayLike) -> np.ndarray:
        return np.asarray(self.fhat(np.asarray(xi, dtype=float)))

    @property
    def is_band_limited(self) -> bool:
        return math.isfinite(self.support_hi)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            **self.params,
            "support": [self.support_lo, _finite_or_none(self.support_hi)],
            "vanishing_moments": _finite_or_none(self.vanishing_moments),
            "tau": self.tau,
        }


@dataclass(frozen=True)
class LowPass:
    """Real, even low-pass window phi^ with phi^ = 1 on |xi| <= xi_pass, 0 beyond xi_stop."""

    name: str
    fhat: FourierMap
    xi_pass: float
    xi_stop: float
    params: dict[str, Any] = field(default_factory=dict, compare=False)

    def __call__(self, xi: ArrayLike) -> np.ndarray:
        return np.asarray(self.fhat(np.asarray(xi, dtype=float)))

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, **self.params, "xi_pass": self.xi_pass, "xi_stop": self.xi_stop}


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def meyer_lowpass(xi_pass: float, xi_stop: float) -> LowPass:
    """phi^(xi) = 1 - theta((|xi| - xi_pass) / (xi_stop - xi_pass))."""
    _check_band(xi_pass, xi_stop)
    width = xi_stop - xi_pass

    def fhat(xi: np.ndarray) -> np.ndarray:
        return 1.0 - smooth_step((np.abs(xi) - xi_pass) / width)

    return LowPass(
        name="meyer",
        fhat=fhat,
        xi_pass=xi_pass,
        xi_stop=xi_stop,
        params={"xi_pass": xi_pass, "xi_stop": xi_stop},
    )


def meyer_wavelet(xi_pass: float, xi_stop: float) -> SpectralWavelet:
    """psi^ = -xi phi^'(xi) for the Meyer low-pass; nonnegative, supported in the annulus."""
    _check_band(xi_pass, xi_stop)
    width = xi_stop - xi_pass

    def fhat(xi: np.ndarray) -> np.ndarray:
        return np.abs(xi) * smooth_step_prime((np.abs(xi) - xi_pass) / width) / width

    return SpectralWavelet(
        name="meyer",
        fhat=fhat,
        support_lo=xi_pass,
        support_hi=xi_stop,
        vanishing_moments=math.inf,
        tau=xi_pass,
        params={"xi_pass": xi_pass, "xi_stop": xi_stop},
    )


def make_band_bump(a: float, b: float) -> SpectralWavelet:
    """Smooth even bump on a <= |xi| <= b, equal to 1 on the middle third."""
    if not (0 < a < b):
        raise ParameterError(f"band bump needs 0 < a < b, got a={a}, b={b}")

    def fhat(xi: np.ndarray) -> np.ndarray:
        return plateau(xi, a, b)

    return SpectralWavelet(
        name="bandbump",
        fhat=fhat,
        support_lo=a,
        support_hi=b,
        vanishing_moments=math.inf,
        tau=a,
        params={"a": a, "b": b},
    )


def make_gaussian_derivative(order: int = 1) -> SpectralWavelet:
    """psi = (-1)^n d^n/dt^n exp(-t^2/2), psi^ = (-i xi)^n sqrt(2 pi) exp(-xi^2/2)."""
    if order < 1:
        raise ParameterError(f"gaussian derivative order must be >= 1, got {order}")
    norm = math.sqrt(2.0 * math.pi)

    def fhat(xi: np.ndarray) -> np.ndarray:
        values = (-1j * xi) ** order * norm * np.exp(-0.5 * xi**2)
        return values.real if order % 2 == 0 else values

    return SpectralWavelet(
        name="gaussian_derivative",
        fhat=fhat,
        vanishing_moments=float(order - 1),
        tau=0.0,
        params={"order": order},
    )


def derivative_wavelet(psi: SpectralWavelet) -> SpectralWavelet:
    """The derivative of psi: (d psi)^(xi) = i xi psi^(xi)."""

    def fhat(xi: np.ndarray) -> np.ndarray:
        return 1j * xi * psi.fhat(xi)

    return SpectralWavelet(
        name=f"d({psi.name})",
        fhat=fhat,
        support_lo=psi.support_lo,
        support_hi=psi.support_hi,
        vanishing_moments=psi.vanishing_moments + 1,
        tau=psi.tau,
        params={"of": psi.params, "op": "derivative"},
    )


def laplacian_wavelet(psi: SpectralWavelet) -> SpectralWavelet:
    """Laplacian of psi: (Delta psi)^(xi) = -xi^2 psi^(xi)."""

    def fhat(xi: np.ndarray) -> np.ndarray:
        return -(xi**2) * psi.fhat(xi)

    return SpectralWavelet(
        name=f"lap({psi.name})",
        fhat=fhat,
        support_lo=psi.support_lo,
        support_hi=psi.support_hi,
        vanishing_moments=psi.vanishing_moments + 2,
        tau=psi.tau,
        params={"of": psi.params, "op": "laplacian"},
    )


def dilate_wavelet(psi: SpectralWavelet, lam: float) -> SpectralWavelet:
    """psi^(xi / lam); supports and tau scale by lam."""
    if lam <= 0:
        raise ParameterError(f"dilation factor must be positive, got {lam}")

    def fhat(xi: np.ndarray) -> np.ndarray:
        return psi.fhat(xi / lam)

    return SpectralWavelet(
        name=psi.name,
        fhat=fhat,
        support_lo=psi.support_lo * lam,
        support_hi=psi.support_hi * lam,
        vanishing_moments=psi.vanishing_moments,
        tau=psi.tau * lam,
        params={**psi.params, "dilation": lam},
    )


def _check_band(xi_pass: float, xi_stop: float) -> None:
    if not (0 < xi_pass < xi_stop):
        raise ParameterError(
            f"band parameters need 0 < xi_pass < xi_stop, got {xi_pass}, {xi_stop}"
        )


# ---------------------------------------------------------------------------
# Moments and non-degeneracy
# ---------------------------------------------------------------------------


def moment(
    psi: SpectralWavelet | SampledSignal,
    m: int,
    step: float = DEFAULT_MOMENT_STEP,
    rtol: float = DEFAULT_MOMENT_RTOL,
) -> float:
    """mu_m = int t^m psi(t) dt.

    Sampled signals are integrated directly (Simpson). Spectral wavelets use
    mu_m = i^m psi^(m)(0) with Richardson-extrapolated central differences.
    """
    if m < 0:
        raise ParameterError(f"moment order must be >= 0, got {m}")
    if not isinstance(psi, SpectralWavelet):
        t = psi.t
        return float(simpson(t**m * psi.samples, x=t))

    if m == 0:
        value = complex(np.asarray(psi(np.array([0.0])))[0])
    else:
        d_h = _central_difference(psi, m, step)
        d_h2 = _central_difference(psi, m, step / 2)
        d_h4 = _central_difference(psi, m, step / 4)
        r1 = (4.0 * d_h2 - d_h) / 3.0
        r2 = (4.0 * d_h4 - d_h2) / 3.0
        derivative = (16.0 * r2 - r1) / 15.0
        if not np.isfinite(derivative) or abs(derivative - r2) > rtol * max(1.0, abs(derivative)):
            raise NumericError(
                f"derivative of order {m} of {psi.name} did not converge "
                f"(extrapolants {r2!r} vs {derivative!r})"
            )
        value = (1j**m) * derivative

    if abs(value.imag) > rtol * max(1.0, abs(value)):
        raise NumericError(f"moment {m} of {psi.name} is not real: {value!r}")
    return float(value.real)


def _central_difference(psi: SpectralWavelet, m: int, h: float) -> complex:
    k = np.arange(m + 1)
    nodes = (m / 2.0 - k) * h
    weights = (-1.0) ** k * comb(m, k)
    values = np.asarray(psi(nodes), dtype=complex)
    return complex(np.sum(weights * values) / h**m)


def nondegeneracy_index(
    psi: SpectralWavelet,
    tol: float = DEFAULT_NONDEGENERACY_TOL,
    points: int = DEFAULT_SCAN_POINTS,
) -> float:
    """Smallest radius at which psi^ is numerically nonzero along both rays.

    |psi^| counts as nonzero above ``tol * sup|psi^|``. Returns inf if one of the
    two directions never exceeds the threshold over the scan range.
    """
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    rho_max = 2.0 * psi.support_hi if psi.is_band_limited else DEFAULT_UNBOUNDED_SCAN
    grid = np.linspace(0.0, rho_max, points + 1)
    magnitudes = {sign: np.abs(psi(sign * grid)) for sign in (1.0, -1.0)}
    peak = max(float(values.max()) for values in magnitudes.values())
    if peak == 0.0:
        return math.inf
    threshold = tol * peak

    radii = []
    for sign, values in magnitudes.items():
        above = np.flatnonzero(values > threshold)
        if above.size == 0:
            logger.debug("nondegeneracy_index: %s vanishes along %+d", psi.name, sign)
            return math.inf
        idx = int(above[0])
        if idx == 0:
            radii.append(0.0)
            continue

        def excess(rho: float, s: float = sign) -> float:
            return float(np.abs(psi(np.array([s * rho])))[0]) - threshold

        lo, hi = float(grid[idx - 1]), float(grid[idx])
        radii.append(lo if excess(lo) >= 0 else brentq(excess, lo, hi))
    return max(radii)
