"""Littlewood-Paley pairs, admissibility constants and pair validation."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from zygmund.errors import (
    AnisotropyError,
    NumericError,
    ParameterError,
    ZeroAdmissibilityError,
)
from zygmund.kernels.wavelets import (
    LowPass,
    SpectralWavelet,
    laplacian_wavelet,
    meyer_lowpass,
    meyer_wavelet,
    moment,
)

logger = logging.getLogger(__name__)

DEFAULT_ADMISSIBILITY_RTOL = 1e-8
DEFAULT_DIRECTION_RTOL = 1e-6
DEFAULT_ZERO_RTOL = 1e-12
DEFAULT_VALIDATION_POINTS = 1024
DEFAULT_MOMENT_TOL = 1e-8

_INITIAL_INTERVALS = 64
_MIN_DOUBLINGS = 3
_MAX_DOUBLINGS = 16


@dataclass(frozen=True)
class LPPair:
    """Low-pass phi, analysing wavelet psi and reconstruction wavelet eta."""

    phi: LowPass
    psi: SpectralWavelet
    eta: SpectralWavelet
    tau: float
    sigma: float
    r: float
    c: float
    order: float
    name: str = "custom"

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "phi": self.phi.to_dict(),
            "psi": self.psi.to_dict(),
            "eta": self.eta.to_dict(),
            "tau": self.tau,
            "sigma": self.sigma,
            "r": self.r,
            "c": self.c,
            "order": self.order if math.isfinite(self.order) else None,
        }


# ---------------------------------------------------------------------------
# Admissibility constant
# ---------------------------------------------------------------------------


def _log_trapezoid(
    integrand: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    rtol: float,
) -> tuple[complex, float]:
    """Integrate g(rho) d rho / rho as a trapezoid in log rho, doubling until stable.

    Returns the integral and the integral of |g| on the final grid.
    """
    a, b = math.log(lo), math.log(hi)
    n = _INITIAL_INTERVALS
    h = (b - a) / n
    values = integrand(np.exp(np.linspace(a, b, n + 1)))
    total = complex(h * (values.sum() - 0.5 * (values[0] + values[-1])))
    magnitude = float(h * (np.abs(values).sum() - 0.5 * (abs(values[0]) + abs(values[-1]))))

    for level in range(1, _MAX_DOUBLINGS + 1):
        mids = integrand(np.exp(a + h * (np.arange(n) + 0.5)))
        refined = 0.5 * total + 0.5 * h * complex(mids.sum())
        magnitude = 0.5 * magnitude + 0.5 * h * float(np.abs(mids).sum())
        change = abs(refined - total)
        total, n, h = refined, 2 * n, h / 2
        logger.debug("admissibility: level %d, %d intervals, change %.3e", level, n, change)
        if level >= _MIN_DOUBLINGS and change <= rtol * max(
            abs(total), DEFAULT_ZERO_RTOL * magnitude
        ):
            return total, magnitude
    raise NumericError(f"log-trapezoid quadrature did not reach rtol={rtol} on [{lo}, {hi}]")


def admissibility_constant(
    psi: SpectralWavelet,
    eta: SpectralWavelet,
    rtol: float = DEFAULT_ADMISSIBILITY_RTOL,
    direction_rtol: float = DEFAULT_DIRECTION_RTOL,
) -> float:
    """c = int_0^inf conj(psi^(rho w)) eta^(rho w) d rho / rho, for w = +1 and w = -1."""
    lo = min(psi.support_lo, eta.support_lo)
    hi = max(psi.support_hi, eta.support_hi)
    lo = lo / 8.0 if lo > 0 else 1e-6
    hi = 8.0 * hi if math.isfinite(hi) else 1e3

    results: dict[float, tuple[complex, float]] = {}
    for omega in (1.0, -1.0):

        def integrand(rho: np.ndarray, w: float = omega) -> np.ndarray:
            return np.conj(psi(w * rho)) * eta(w * rho)

        results[omega] = _log_trapezoid(integrand, lo, hi, rtol)

    vanishing = {
        omega: scale == 0.0 or abs(value) < DEFAULT_ZERO_RTOL * scale
        for omega, (value, scale) in results.items()
    }
    c_plus, c_minus = results[1.0][0], results[-1.0][0]
    if all(vanishing.values()):
        raise ZeroAdmissibilityError(
            f"{eta.name} is not a reconstruction wavelet for {psi.name}: c vanishes"
        )
    if any(vanishing.values()) or abs(c_plus - c_minus) > direction_rtol * max(
        abs(c_plus), abs(c_minus)
    ):
        raise AnisotropyError(
            f"admissibility constant depends on direction: {c_plus!r} vs {c_minus!r}"
        )
    c = 0.5 * (c_plus + c_minus)
    if abs(c.imag) >= direction_rtol * abs(c):
        raise NumericError(f"admissibility constant is not real: {c!r}")
    logger.debug("admissibility_constant(%s, %s) = %.12g", psi.name, eta.name, c.real)
    return float(c.real)


# ---------------------------------------------------------------------------
# Pair construction
# ---------------------------------------------------------------------------


def build_lp_pair(
    phi: LowPass,
    psi: SpectralWavelet,
    eta: SpectralWavelet | None = None,
    order: float = math.inf,
    sigma: float | None = None,
    name: str = "custom",
) -> LPPair:
    """Assemble an LP pair and compute its admissibility constant.

    ``r`` is the stop band of phi; ``sigma`` defaults to the midpoint of (tau, r).
    """
    eta = eta if eta is not None else psi
    tau, r = psi.tau, phi.xi_stop
    sigma = sigma if sigma is not None else 0.5 * (tau + r)
    if not (tau < sigma < r):
        raise ParameterError(f"pair needs tau < sigma < r, got {tau}, {sigma}, {r}")
    c = admissibility_constant(psi, eta)
    return LPPair(phi=phi, psi=psi, eta=eta, tau=tau, sigma=sigma, r=r, c=c, order=order, name=name)


def make_meyer_lp_pair(xi_pass: float = 0.5, xi_stop: float = 1.0) -> LPPair:
    """Meyer-type pair: phi^ from the exp(-1/x) transition, psi^ = -xi phi^', eta = psi."""
    phi = meyer_lowpass(xi_pass, xi_stop)
    psi = meyer_wavelet(xi_pass, xi_stop)
    pair = build_lp_pair(phi, psi, psi, order=math.inf, name="meyer")
    logger.info("meyer pair (%g, %g): c = %.10g", xi_pass, xi_stop, pair.c)
    return pair


def laplacian_pair(pair: LPPair) -> LPPair:
    """(phi, Delta psi) with the same reconstruction wavelet; c is recomputed."""
    psi = laplacian_wavelet(pair.psi)
    c = admissibility_constant(psi, pair.eta)
    return LPPair(
        phi=pair.phi,
        psi=psi,
        eta=pair.eta,
        tau=pair.tau,
        sigma=pair.sigma,
        r=pair.r,
        c=c,
        order=pair.order,
        name=f"lap({pair.name})",
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationCheck:
    name: str
    passed: bool
    measured: float
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "detail": self.detail,
        }


@dataclass
class ValidationReport:
    """Outcome of each LP-pair condition, with the measured quantity."""

    pair: str
    alpha: float
    checks: list[ValidationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> ValidationCheck:
        return next(check for check in self.checks if check.name == name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "pair": self.pair,
            "alpha": self.alpha,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


def validate_lp_pair(
    pair: LPPair,
    alpha: float,
    points: int = DEFAULT_VALIDATION_POINTS,
    moment_tol: float = DEFAULT_MOMENT_TOL,
) -> ValidationReport:
    """Check phi^ != 0 on |u| <= tau, vanishing moments through floor(alpha), and c != 0."""
    if not math.isfinite(alpha):
        raise ParameterError(f"alpha must be finite, got {alpha}")
    report = ValidationReport(pair=pair.name, alpha=alpha)

    u = np.linspace(-pair.tau, pair.tau, points)
    values = np.real(pair.phi(u))
    no_sign_change = bool(np.all(values > 0) or np.all(values < 0))
    report.checks.append(
        ValidationCheck(
            name="lowpass_nonvanishing",
            passed=no_sign_change,
            measured=float(np.min(np.abs(values))),
            detail=f"min |phi^(u)| over {points} points in [-{pair.tau}, {pair.tau}]",
        )
    )

    top = math.floor(alpha) if alpha >= 0 else 0
    worst, failed_at, detail = 0.0, None, ""
    for m in range(top + 1):
        try:
            mu = moment(pair.psi, m)
        except NumericError as exc:
            failed_at, worst, detail = m, math.nan, str(exc)
            break
        worst = max(worst, abs(mu))
        if abs(mu) > moment_tol:
            failed_at, detail = m, f"mu_{m} = {mu:.6g}"
            break
    report.checks.append(
        ValidationCheck(
            name="vanishing_moments",
            passed=failed_at is None,
            measured=worst,
            detail=detail or f"mu_m = 0 for m <= {top}",
        )
    )

    report.checks.append(
        ValidationCheck(
            name="admissibility",
            passed=math.isfinite(pair.c) and pair.c != 0.0,
            measured=pair.c,
            detail="c_{psi,eta}",
        )
    )
    logger.info(
        "validate_lp_pair(%s, alpha=%g): %s",
        pair.name,
        alpha,
        "pass" if report.passed else "fail",
    )
    return report
