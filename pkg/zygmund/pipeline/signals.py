"""Signal ingestion, export and the synthetic test-signal factory."""

from __future__ import annotations

import csv
import json
import logging
import math
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np

from zygmund.errors import IngestionError, InputError, ParameterError
from zygmund.kernels.glue import plateau
from zygmund.transform.grids import SampledSignal

logger = logging.getLogger(__name__)

DEFAULT_T_MIN = -8.0
DEFAULT_T_MAX = 8.0
DEFAULT_N = 2**14
DEFAULT_JITTER_TOL = 1e-9
FORMATS = ("csv", "f64le")
SIGNAL_KINDS = ("weierstrass", "cusp", "bandbump", "cos")


def infer_format(path: str | Path) -> str:
    return "csv" if Path(path).suffix.lower() in {".csv", ".txt"} else "f64le"


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------


def _read_csv(path: Path) -> tuple[np.ndarray, np.ndarray, list[int]]:
    times: list[float] = []
    values: list[float] = []
    rows: list[int] = []
    with path.open(newline="", encoding="utf-8") as fh:
        for row_number, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise IngestionError(f"{path}: row {row_number} has {len(row)} columns, expected 2")
            try:
                t, v = float(row[0]), float(row[1])
            except ValueError:
                if not times:
                    continue  # header
                raise IngestionError(f"{path}: row {row_number} is not numeric: {row!r}") from None
            times.append(t)
            values.append(v)
            rows.append(row_number)
    return np.asarray(times), np.asarray(values), rows


def _check_uniform(
    path: Path, t: np.ndarray, rows: list[int], jitter_tol: float
) -> tuple[float, float]:
    if t.size < 2:
        raise IngestionError(f"{path}: need at least two samples, got {t.size}")
    if not np.all(np.isfinite(t)):
        bad = int(np.flatnonzero(~np.isfinite(t))[0])
        raise IngestionError(f"{path}: non-finite time at row {rows[bad]}")
    dt = (t[-1] - t[0]) / (t.size - 1)
    if not dt > 0:
        raise IngestionError(f"{path}: times must increase, got dt={dt}")
    steps = np.diff(t)
    off = np.flatnonzero(np.abs(steps - dt) > jitter_tol * dt)
    if off.size:
        i = int(off[0]) + 1
        raise IngestionError(
            f"{path}: non-uniform sampling at row {rows[i]} (index {i}): "
            f"step {steps[i - 1]:.17g} vs dt {dt:.17g}"
        )
    return float(t[0]), float(dt)


def ingest(
    path: str | Path, fmt: str | None = None, jitter_tol: float = DEFAULT_JITTER_TOL
) -> SampledSignal:
    """Read a uniformly sampled signal from ``t,value`` CSV or raw f64le plus sidecar."""
    path = Path(path)
    fmt = fmt or infer_format(path)
    if fmt not in FORMATS:
        raise ParameterError(f"unknown signal format {fmt!r}, expected one of {FORMATS}")
    if not path.is_file():
        raise IngestionError(f"input file not found: {path}")

    if fmt == "csv":
        t, values, rows = _read_csv(path)
        if t.size == 0:
            raise IngestionError(f"{path}: no samples")
        t0, dt = _check_uniform(path, t, rows, jitter_tol)
    else:
        meta_path = sidecar_path(path)
        try:
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
            t0, dt = float(meta["t0"]), float(meta["dt"])
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise IngestionError(f"{path}: unreadable sidecar {meta_path}: {exc}") from exc
        values = np.fromfile(path, dtype="<f8")
        if values.size == 0:
            raise IngestionError(f"{path}: no samples")

    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise IngestionError(f"{path}: non-finite sample at index {bad}")
    try:
        signal = SampledSignal(values, t0, dt, name=path.stem)
    except InputError as exc:
        raise IngestionError(f"{path}: {exc}") from exc
    logger.info("ingested %s: n=%d, t0=%g, dt=%g", path, signal.n, signal.t0, signal.dt)
    return signal


def write_signal(signal: SampledSignal, path: str | Path, fmt: str | None = None) -> Path:
    path = Path(path)
    fmt = fmt or infer_format(path)
    if fmt not in FORMATS:
        raise ParameterError(f"unknown signal format {fmt!r}, expected one of {FORMATS}")
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "value"])
            for t, v in zip(signal.t, signal.samples):
                writer.writerow([repr(float(t)), repr(float(v))])
    else:
        np.ascontiguousarray(signal.samples, dtype="<f8").tofile(path)
        meta = {"t0": signal.t0, "dt": signal.dt, "n": signal.n, "name": signal.name}
        sidecar_path(path).write_text(json.dumps(meta, indent=2), encoding="utf-8")
    logger.info("wrote %s (%s, n=%d)", path, fmt, signal.n)
    return path


# ---------------------------------------------------------------------------
# Synthetic signals
# ---------------------------------------------------------------------------


def weierstrass(t: np.ndarray, s: float = 0.5, levels: int = 12) -> np.ndarray:
    """sum_{j=0}^{levels} 2^(-j s) cos(2^j t)."""
    if not 0 < s < 1:
        raise ParameterError(f"weierstrass exponent must lie in (0, 1), got {s}")
    if levels < 0:
        raise ParameterError(f"levels must be >= 0, got {levels}")
    out = np.zeros_like(t)
    for j in range(levels + 1):
        out += 2.0 ** (-j * s) * np.cos(2.0**j * t)
    return out


def cusp(
    t: np.ndarray, gamma: float = 0.5, center: float = 0.0, log_power: float = 0.0
) -> np.ndarray:
    """|t - c|^gamma (1 + |ln|t - c||)^log_power, zero at the centre."""
    if not gamma > 0:
        raise ParameterError(f"cusp exponent must be positive, got {gamma}")
    r = np.abs(t - center)
    safe = np.where(r > 0, r, 1.0)
    values = safe**gamma * (1.0 + np.abs(np.log(safe))) ** log_power
    return np.where(r > 0, values, 0.0)


def bandbump(t: np.ndarray, a: float = 1.0, b: float = 2.0, center: float = 0.0) -> np.ndarray:
    """Inverse Fourier transform of the even plateau bump on a <= |xi| <= b, shifted to ``center``."""
    if not 0 < a < b:
        raise ParameterError(f"band must satisfy 0 < a < b, got [{a}, {b}]")
    reach = max(float(np.max(np.abs(t - center))), 1.0)
    nodes = max(256, math.ceil(4.0 * (b - a) * reach / math.pi) + 1)
    xi = np.linspace(a, b, nodes)
    weights = plateau(xi, a, b) * (xi[1] - xi[0]) / math.pi
    out = np.empty_like(t)
    for start in range(0, t.size, 4096):
        chunk = t[start : start + 4096] - center
        out[start : start + 4096] = np.cos(np.outer(chunk, xi)) @ weights
    return out


def cosine(t: np.ndarray, omega: float = 1.0) -> np.ndarray:
    if not math.isfinite(omega):
        raise ParameterError(f"frequency must be finite, got {omega}")
    return np.cos(omega * t)


GENERATORS: dict[str, Callable[..., np.ndarray]] = {
    "weierstrass": weierstrass,
    "cusp": cusp,
    "bandbump": bandbump,
    "cos": cosine,
}


def gen(
    kind: str,
    params: dict[str, Any] | None = None,
    t_min: float = DEFAULT_T_MIN,
    t_max: float = DEFAULT_T_MAX,
    n: int = DEFAULT_N,
) -> SampledSignal:
    """Deterministic test signal of ``kind`` on [t_min, t_max) with n samples."""
    if kind not in GENERATORS:
        raise ParameterError(f"unknown signal kind {kind!r}, expected one of {SIGNAL_KINDS}")
    params = {key: value for key, value in (params or {}).items() if value is not None}
    try:
        signal = SampledSignal.from_function(
            lambda t: GENERATORS[kind](t, **params), t_min, t_max, n, name=kind
        )
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {kind}: {exc}") from exc
    logger.info("gen %s %s on [%g, %g), n=%d", kind, params, t_min, t_max, n)
    return signal
