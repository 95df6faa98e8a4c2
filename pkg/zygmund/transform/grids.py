"""Sampled signals, log-scale grids and scalograms."""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any

import numpy as np
from scipy import fft as sp_fft

from zygmund.errors import GridError, InputError, ParameterError, ScaleError, ShapeError

logger = logging.getLogger(__name__)

DEFAULT_Y_MAX = 1.0
DEFAULT_VOICES = 16
DEFAULT_Y_MIN_FLOOR = 2.0**-10
DEFAULT_Y_MIN_DT_FACTOR = 4.0
DEFAULT_MARGIN_FACTOR = 8.0
NYQUIST_FACTOR = 2.0
MIN_TRANSFORM_LENGTH = 8
MIN_VOICES = 4


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Uniform samples of a real function on [t0, t0 + n*dt), zero outside."""

    samples: np.ndarray
    t0: float = 0.0
    dt: float = 1.0
    name: str = "signal"

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size < 2:
            raise InputError(f"a signal needs a 1-D array of >= 2 samples, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            bad = int(np.flatnonzero(~np.isfinite(samples))[0])
            raise InputError(f"non-finite sample at index {bad}")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InputError(f"sample spacing must be positive, got dt={self.dt}")
        object.__setattr__(self, "samples", samples)

    @property
    def n(self) -> int:
        return int(self.samples.size)

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def t1(self) -> float:
        return self.t0 + self.n * self.dt

    def with_samples(self, samples: np.ndarray, name: str | None = None) -> SampledSignal:
        return SampledSignal(samples, self.t0, self.dt, name or self.name)

    def shifted(self, k: int) -> SampledSignal:
        """Move the samples k steps to the right, filling with zeros."""
        out = np.zeros_like(self.samples)
        if k >= 0:
            out[k:] = self.samples[: self.n - k]
        else:
            out[:k] = self.samples[-k:]
        return self.with_samples(out)

    @classmethod
    def from_function(
        cls,
        func: Callable[[np.ndarray], np.ndarray],
        t_min: float,
        t_max: float,
        n: int,
        name: str = "signal",
    ) -> SampledSignal:
        if n < 2 or not t_max > t_min:
            raise ParameterError(f"need n >= 2 and t_max > t_min, got n={n}, [{t_min}, {t_max}]")
        dt = (t_max - t_min) / n
        t = t_min + dt * np.arange(n)
        return cls(np.asarray(func(t), dtype=float), t_min, dt, name)

    def require_transformable(self) -> None:
        if self.n < MIN_TRANSFORM_LENGTH:
            raise InputError(
                f"transforms need at least {MIN_TRANSFORM_LENGTH} samples, got {self.n}"
            )

    def describe(self) -> dict[str, Any]:
        return {"name": self.name, "n": self.n, "t0": self.t0, "dt": self.dt}


@dataclass(frozen=True)
class ScaleGrid:
    """y_j = y_max * 2^(-j/voices), j = 0..J, with y_J <= y_min."""

    y_min: float
    y_max: float = DEFAULT_Y_MAX
    voices: int = DEFAULT_VOICES

    def __post_init__(self) -> None:
        if not (0 < self.y_min < self.y_max):
            raise ParameterError(f"scale grid needs 0 < y_min < y_max, got {self.y_min}, {self.y_max}")
        if self.voices < MIN_VOICES:
            raise ParameterError(f"voices must be >= {MIN_VOICES}, got {self.voices}")

    @cached_property
    def values(self) -> np.ndarray:
        octaves = math.log2(self.y_max / self.y_min)
        count = math.ceil(self.voices * octaves - 1e-9)
        return self.y_max * np.exp2(-np.arange(count + 1) / self.voices)

    @property
    def log_step(self) -> float:
        """Step of the d y / y quadrature (trapezoid in ln y)."""
        return math.log(2.0) / self.voices

    def weights(self) -> np.ndarray:
        return trapezoid_weights(self.values.size, self.log_step)

    def check_resolvable(self, dt: float) -> None:
        """Require y_min >= 2 dt; the last grid scale may sit up to one voice below y_min."""
        if self.y_min < NYQUIST_FACTOR * dt * (1 - 1e-12):
            raise ScaleError(
                f"y_min {self.y_min:.6g} is below the Nyquist guard "
                f"{NYQUIST_FACTOR} * dt = {NYQUIST_FACTOR * dt:.6g}"
            )

    @classmethod
    def default_for(
        cls,
        signal: SampledSignal,
        y_max: float = DEFAULT_Y_MAX,
        voices: int = DEFAULT_VOICES,
        y_min: float | None = None,
        y_min_floor: float = DEFAULT_Y_MIN_FLOOR,
        dt_factor: float = DEFAULT_Y_MIN_DT_FACTOR,
    ) -> ScaleGrid:
        if y_min is None:
            y_min = max(dt_factor * signal.dt, y_min_floor)
        return cls(y_min=y_min, y_max=y_max, voices=voices)

    def to_dict(self) -> dict[str, Any]:
        return {"y_min": self.y_min, "y_max": self.y_max, "voices": self.voices}


def trapezoid_weights(count: int, step: float) -> np.ndarray:
    weights = np.full(count, step)
    if count > 1:
        weights[[0, -1]] *= 0.5
    return weights


@dataclass(frozen=True, eq=False)
class Scalogram:
    """W[i, j] = W_psi f(x_i, y_j) on the signal's x-grid and a log-scale grid."""

    values: np.ndarray
    t0: float
    dt: float
    scales: np.ndarray
    voices: int
    wavelet: str = "unknown"
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        scales = np.asarray(self.scales, dtype=float)
        if values.ndim != 2 or values.shape[1] != scales.size:
            raise ShapeError(
                f"scalogram of shape {values.shape} does not match {scales.size} scales"
            )
        if not np.all(np.isfinite(values)):
            raise InputError("scalogram contains non-finite entries")
        if scales.size > 1 and not np.all(np.diff(scales) < 0):
            raise ShapeError("scales must be strictly decreasing")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "scales", scales)

    @property
    def n_x(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_scales(self) -> int:
        return int(self.values.shape[1])

    @property
    def x(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_x)

    @property
    def log_step(self) -> float:
        return math.log(2.0) / self.voices

    def weights(self) -> np.ndarray:
        return trapezoid_weights(self.n_scales, self.log_step)

    def scaled(self, factor: float) -> Scalogram:
        return Scalogram(
            self.values * factor, self.t0, self.dt, self.scales, self.voices, self.wavelet, self.meta
        )

    def __add__(self, other: Scalogram) -> Scalogram:
        if other.values.shape != self.values.shape or not np.allclose(other.scales, self.scales):
            raise ShapeError("scalograms live on different grids")
        return Scalogram(
            self.values + other.values, self.t0, self.dt, self.scales, self.voices, self.wavelet
        )

    def scale_mask(self, scale_range: tuple[float, float] | None) -> np.ndarray:
        if scale_range is None:
            return np.ones(self.n_scales, dtype=bool)
        lo, hi = scale_range
        tol = 1e-9 * hi
        return (self.scales >= lo - tol) & (self.scales <= hi + tol)

    def sidecar(self) -> dict[str, Any]:
        return {
            "nx": self.n_x,
            "ny": self.n_scales,
            "t0": self.t0,
            "dt": self.dt,
            "scales": self.scales.tolist(),
            "voices": self.voices,
            "wavelet": self.wavelet,
        }

    def export(self, path: str | Path) -> Path:
        """Write row-major little-endian float64 data plus ``<path>.json``."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        np.ascontiguousarray(self.values, dtype="<f8").tofile(path)
        sidecar_path = path.with_name(path.name + ".json")
        sidecar_path.write_text(json.dumps(self.sidecar(), indent=2), encoding="utf-8")
        logger.info("scalogram %dx%d exported to %s", self.n_x, self.n_scales, path)
        return path

    @classmethod
    def load(cls, path: str | Path) -> Scalogram:
        path = Path(path)
        sidecar_path = path.with_name(path.name + ".json")
        try:
            meta = json.loads(sidecar_path.read_text(encoding="utf-8"))
            nx, ny = int(meta["nx"]), int(meta["ny"])
            values = np.fromfile(path, dtype="<f8")
        except (OSError, KeyError, ValueError) as exc:
            raise InputError(f"cannot read scalogram {path}: {exc}") from exc
        if values.size != nx * ny:
            raise ShapeError(f"{path} holds {values.size} values, sidecar says {nx}x{ny}")
        return cls(
            values.reshape(nx, ny),
            float(meta["t0"]),
            float(meta["dt"]),
            np.asarray(meta["scales"], dtype=float),
            int(meta.get("voices", DEFAULT_VOICES)),
            str(meta.get("wavelet", "unknown")),
        )


# ---------------------------------------------------------------------------
# Padding and interior window
# ---------------------------------------------------------------------------


def padded_length(n: int) -> int:
    """FFT length for zero padding to at least twice the signal length."""
    return int(sp_fft.next_fast_len(2 * n, real=True))


def angular_frequencies(m: int, dt: float) -> np.ndarray:
    """Nonnegative angular frequencies of an rfft of length m."""
    return 2.0 * np.pi * sp_fft.rfftfreq(m, dt)


def default_margin(y_max: float, factor: float = DEFAULT_MARGIN_FACTOR) -> float:
    return factor * y_max


def interior_window(n: int, dt: float, margin: float) -> slice:
    """Indices at least ``margin`` away from both ends of the sampling window."""
    if margin < 0:
        raise ParameterError(f"margin must be >= 0, got {margin}")
    k = math.ceil(margin / dt - 1e-9)
    if 2 * k >= n:
        raise GridError(
            f"interior window is empty: margin {margin:g} exceeds half the window "
            f"({n * dt / 2:g}); widen the window or lower the margin"
        )
    return slice(k, n - k)
