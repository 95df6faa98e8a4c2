"""Command dispatch: RunConfig in, JSON report and exit code out."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from zygmund.errors import ConfigurationError, ParameterError, UsageError, ZygmundError
from zygmund.kernels.factory import (
    DEFAULT_PAIR_SPEC,
    DEFAULT_WAVELET_SPEC,
    build_pair,
    build_wavelet,
)
from zygmund.kernels.pairs import (
    DEFAULT_MOMENT_TOL,
    DEFAULT_VALIDATION_POINTS,
    LPPair,
    validate_lp_pair,
)
from zygmund.kernels.wavelets import SpectralWavelet
from zygmund.pipeline import reports
from zygmund.pipeline.signals import (
    DEFAULT_N,
    DEFAULT_T_MAX,
    DEFAULT_T_MIN,
    gen,
    ingest,
    write_signal,
)
from zygmund.regularity.norms import (
    DEFAULT_MAX_PAIRS,
    holder_norm,
    schwartz_seminorm,
    second_difference_norm,
    zygmund_norm,
)
from zygmund.regularity.pointwise import (
    DEFAULT_CONE_ANGLES,
    DEFAULT_Y_FLOOR,
    cone_scan,
    fit_regularity,
    pointwise_fit,
)
from zygmund.regularity.weights import SlowlyVaryingWeight
from zygmund.transform.cwt import cwt_forward, reconstruct
from zygmund.transform.grids import (
    DEFAULT_MARGIN_FACTOR,
    DEFAULT_VOICES,
    DEFAULT_Y_MAX,
    DEFAULT_Y_MIN_DT_FACTOR,
    DEFAULT_Y_MIN_FLOOR,
    NYQUIST_FACTOR,
    SampledSignal,
    ScaleGrid,
    Scalogram,
)
from zygmund.transform.pairing import PAIRING_VOICES, lp_pairing_report

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config.yaml"
DEFAULT_SEED = 0
DEFAULT_EPS_MAX = 0.25
DEFAULT_EPS_COUNT = 12
COMMANDS = ("gen", "cwt", "reconstruct", "norm", "estimate", "scan-point", "lp-pair", "validate")
NORM_KINDS = ("zygmund", "holder", "second-difference", "schwartz")


def load_config(path: str | Path | None = DEFAULT_CONFIG_PATH) -> dict[str, Any]:
    """Load the YAML settings file; a missing file means all defaults."""
    if path is None:
        return {}
    path = Path(path)
    if not path.is_file():
        logger.debug("no config at %s, using defaults", path)
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"{path} is not valid YAML: {exc}") from exc
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ConfigurationError(f"{path} must hold a mapping, got {type(config).__name__}")
    return config


def config_section(config: dict[str, Any], name: str) -> dict[str, Any]:
    section = config.get(name)
    if section is None:
        return {}
    if not isinstance(section, dict):
        raise ConfigurationError(
            f"config section {name!r} must be a mapping, got {type(section).__name__}"
        )
    return section


def config_value(section: dict[str, Any], key: str, default: Any, cast: type) -> Any:
    value = section.get(key, default)
    try:
        return cast(value)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"config key {key!r} must be {cast.__name__}, got {value!r}") from exc


def parse_spec(value: str | dict[str, Any] | None, what: str) -> dict[str, Any] | None:
    """Inline JSON, a JSON file, or a bare kind name such as ``meyer``."""
    if value is None or isinstance(value, dict):
        return value
    text = value.strip()
    try:
        if text.startswith("{"):
            return dict(json.loads(text))
        if Path(text).is_file():
            return dict(json.loads(Path(text).read_text(encoding="utf-8")))
    except (ValueError, TypeError) as exc:
        raise ParameterError(f"{what} spec is not valid JSON: {exc}") from exc
    return {"kind": text}


@dataclass
class RunConfig:
    command: str
    input: Path | None = None
    output: Path | None = None
    fmt: str | None = None
    pair: str | dict[str, Any] | None = None
    wavelet: str | dict[str, Any] | None = None
    weight: str | dict[str, Any] | None = None
    alpha: float | None = None
    y_min: float | None = None
    y_max: float | None = None
    voices: int | None = None
    margin: float | None = None
    x0: float | None = None
    k: int | None = None
    seed: int | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}, expected one of {COMMANDS}")
        needs_input = self.command not in ("gen", "validate") and not self.options.get("scalogram")
        if needs_input and self.input is None:
            raise UsageError(f"{self.command} needs --input")
        if self.command == "gen" and self.output is None:
            raise UsageError("gen needs --output")
        if self.alpha is not None and not math.isfinite(self.alpha):
            raise ParameterError(f"alpha must be finite, got {self.alpha}")
        if self.voices is not None and self.voices < 4:
            raise ParameterError(f"voices must be >= 4, got {self.voices}")
        if self.margin is not None and self.margin < 0:
            raise ParameterError(f"margin must be >= 0, got {self.margin}")

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        for key in ("input", "output"):
            data[key] = str(data[key]) if data[key] is not None else None
        data["options"] = {
            key: str(value) if isinstance(value, Path) else value
            for key, value in self.options.items()
        }
        return data


class Runner:
    """Executes one RunConfig against the library using YAML settings for defaults."""

    def __init__(self, config: dict[str, Any] | None = None) -> None:
        self.config = config or {}
        grid_cfg = config_section(self.config, "grid")
        self.y_max = config_value(grid_cfg, "y_max", DEFAULT_Y_MAX, float)
        self.y_min_floor = config_value(grid_cfg, "y_min_floor", DEFAULT_Y_MIN_FLOOR, float)
        self.y_min_dt_factor = config_value(grid_cfg, "y_min_dt_factor", DEFAULT_Y_MIN_DT_FACTOR, float)
        self.voices = config_value(grid_cfg, "voices", DEFAULT_VOICES, int)
        self.margin_factor = config_value(grid_cfg, "margin_factor", DEFAULT_MARGIN_FACTOR, float)
        kernels_cfg = config_section(self.config, "kernels")
        self.validation_points = config_value(
            kernels_cfg, "validation_points", DEFAULT_VALIDATION_POINTS, int
        )
        self.moment_tol = config_value(kernels_cfg, "moment_tol", DEFAULT_MOMENT_TOL, float)
        self.wavelet_spec = parse_spec(kernels_cfg.get("wavelet"), "wavelet") or DEFAULT_WAVELET_SPEC
        self.max_pairs = config_value(
            config_section(self.config, "norms"), "max_pairs", DEFAULT_MAX_PAIRS, int
        )
        pointwise_cfg = config_section(self.config, "pointwise")
        self.angles = config_value(pointwise_cfg, "angles", DEFAULT_CONE_ANGLES, int)
        self.y_floor = config_value(pointwise_cfg, "y_floor", DEFAULT_Y_FLOOR, float)
        signals_cfg = config_section(self.config, "signals")
        self.t_min = config_value(signals_cfg, "t_min", DEFAULT_T_MIN, float)
        self.t_max = config_value(signals_cfg, "t_max", DEFAULT_T_MAX, float)
        self.n = config_value(signals_cfg, "n", DEFAULT_N, int)

        self.handlers = {
            "gen": self._gen,
            "cwt": self._cwt,
            "reconstruct": self._reconstruct,
            "norm": self._norm,
            "estimate": self._estimate,
            "scan-point": self._scan_point,
            "lp-pair": self._lp_pair,
            "validate": self._validate,
        }

    # -- shared pieces -----------------------------------------------------

    def grid_for(
        self,
        rc: RunConfig,
        signal: SampledSignal,
        voices: int | None = None,
        fit_window: bool = False,
    ) -> ScaleGrid:
        """Scale grid from flags, then config; ``fit_window`` keeps the default interior nonempty."""
        if rc.voices is not None:
            voices = rc.voices
        y_max = rc.y_max
        if y_max is None:
            y_max = self.window_y_max(rc, signal) if fit_window else self.y_max
        return ScaleGrid.default_for(
            signal,
            y_max=y_max,
            voices=voices or self.voices,
            y_min=rc.y_min,
            y_min_floor=self.y_min_floor,
            dt_factor=self.y_min_dt_factor,
        )

    def window_y_max(self, rc: RunConfig, signal: SampledSignal) -> float:
        """Configured y_max, lowered so that margin_factor * y_max leaves half the window."""
        if rc.margin is not None:
            return self.y_max
        span = signal.t1 - signal.t0
        fitted = span / (4.0 * self.margin_factor)
        if fitted >= self.y_max:
            return self.y_max
        logger.info("y_max lowered from %g to %g to fit the %g-wide window", self.y_max, fitted, span)
        return fitted

    def margin_for(self, rc: RunConfig, grid: ScaleGrid) -> float:
        return rc.margin if rc.margin is not None else self.margin_factor * grid.y_max

    def lag_margin_for(self, rc: RunConfig, signal: SampledSignal) -> float:
        """Difference-norm margin: margin_factor, at most a quarter of the window."""
        if rc.margin is not None:
            return rc.margin
        return min(self.margin_factor, (signal.t1 - signal.t0) / 4.0)

    def pair_for(self, rc: RunConfig) -> LPPair:
        return build_pair(parse_spec(rc.pair, "pair") or DEFAULT_PAIR_SPEC)

    def wavelet_for(self, rc: RunConfig) -> SpectralWavelet:
        """--wavelet, else the psi of --pair, else the configured wide band bump."""
        if rc.wavelet is not None:
            return build_wavelet(parse_spec(rc.wavelet, "wavelet") or {})
        if rc.pair is not None:
            return self.pair_for(rc).psi
        return build_wavelet(self.wavelet_spec)

    def weight_for(self, rc: RunConfig) -> SlowlyVaryingWeight:
        spec = rc.weight
        if isinstance(spec, str) and (spec.strip().startswith("{") or Path(spec.strip()).is_file()):
            spec = parse_spec(spec, "weight")
        return SlowlyVaryingWeight.from_spec(spec)

    def signal_for(self, rc: RunConfig) -> SampledSignal:
        return ingest(rc.input, rc.fmt)

    @staticmethod
    def alpha_for(rc: RunConfig) -> float:
        if rc.alpha is None:
            raise UsageError(f"{rc.command} needs --alpha")
        return rc.alpha

    # -- commands ----------------------------------------------------------

    def _gen(self, rc: RunConfig) -> dict[str, Any]:
        kind = rc.options.get("kind")
        if not kind:
            raise UsageError("gen needs a signal kind")
        signal = gen(
            kind,
            rc.options.get("params"),
            t_min=rc.options.get("t_min") if rc.options.get("t_min") is not None else self.t_min,
            t_max=rc.options.get("t_max") if rc.options.get("t_max") is not None else self.t_max,
            n=rc.options.get("n") or self.n,
        )
        path = write_signal(signal, rc.output, rc.fmt)
        return {"signal": signal.describe(), "path": str(path), "params": rc.options.get("params")}

    def _cwt(self, rc: RunConfig) -> dict[str, Any]:
        signal = self.signal_for(rc)
        psi = self.wavelet_for(rc)
        grid = self.grid_for(rc, signal, fit_window=True)
        scalogram = cwt_forward(signal, psi, grid)
        result: dict[str, Any] = {
            "signal": signal.describe(),
            "wavelet": psi.to_dict(),
            "grid": grid.to_dict(),
            "shape": [scalogram.n_x, scalogram.n_scales],
            "scale_maxima": np.max(np.abs(scalogram.values), axis=0),
        }
        if rc.output is not None:
            result["scalogram"] = str(scalogram.export(Path(rc.output).with_suffix(".f64")))
        return result

    def _reconstruct(self, rc: RunConfig) -> dict[str, Any]:
        signal = self.signal_for(rc)
        pair = self.pair_for(rc)
        grid = self.grid_for(rc, signal)
        margin = self.margin_for(rc, grid)
        reconstructed, error = reconstruct(signal, pair, grid, margin)
        result: dict[str, Any] = {
            "signal": signal.describe(),
            "pair": pair.name,
            "c": pair.c,
            "grid": grid.to_dict(),
            "margin": margin,
            "error": error,
        }
        if rc.options.get("write"):
            result["reconstructed"] = str(write_signal(reconstructed, rc.options["write"]))
        return result

    def _norm(self, rc: RunConfig) -> dict[str, Any]:
        kind = rc.options.get("norm", "zygmund")
        if kind not in NORM_KINDS:
            raise ParameterError(f"unknown norm {kind!r}, expected one of {NORM_KINDS}")
        signal = self.signal_for(rc)
        weight = self.weight_for(rc)
        if kind == "schwartz":
            k, m = rc.k or 0, int(rc.options.get("m") or 0)
            return {"name": "schwartz", "k": k, "m": m, "value": schwartz_seminorm(signal, k, m)}
        if kind == "second-difference":
            margin = self.lag_margin_for(rc, signal)
            p = int(rc.options.get("p") or 0)
            return second_difference_norm(signal, weight, p, margin, self.max_pairs).to_dict()
        alpha = self.alpha_for(rc)
        if kind == "holder":
            margin = self.lag_margin_for(rc, signal)
            return holder_norm(signal, weight, alpha, margin, self.max_pairs).to_dict()
        grid = self.grid_for(rc, signal, fit_window=True)
        return zygmund_norm(
            signal, self.pair_for(rc), weight, alpha, grid, self.margin_for(rc, grid)
        ).to_dict()

    def _estimate(self, rc: RunConfig) -> dict[str, Any]:
        if rc.options.get("scalogram"):
            scalogram = Scalogram.load(rc.options["scalogram"])
            margin = rc.margin
        else:
            signal = self.signal_for(rc)
            grid = self.grid_for(rc, signal, fit_window=True)
            scalogram = cwt_forward(signal, self.wavelet_for(rc), grid)
            margin = self.margin_for(rc, grid)
        lo, hi = rc.options.get("scale_lo"), rc.options.get("scale_hi")
        scale_range = None
        if lo is not None or hi is not None:
            scale_range = (
                lo if lo is not None else float(scalogram.scales[-1]),
                hi if hi is not None else float(scalogram.scales[0]),
            )
        log_basis = bool(rc.options.get("log_basis"))
        if rc.x0 is not None:
            cone_width = float(rc.options.get("cone_width") or 1.0)
            report = pointwise_fit(scalogram, rc.x0, cone_width, log_basis, scale_range)
        else:
            report = fit_regularity(scalogram, log_basis, scale_range, margin)
        return report.to_dict()

    def _scan_point(self, rc: RunConfig) -> dict[str, Any]:
        if rc.x0 is None:
            raise UsageError("scan-point needs --x0")
        signal = self.signal_for(rc)
        eps_max = float(rc.options.get("eps_max") or DEFAULT_EPS_MAX)
        eps_min = rc.options.get("eps_min")
        if eps_min is None:
            eps_min = NYQUIST_FACTOR * signal.dt / self.y_floor * (1 + 1e-9)
        count = int(rc.options.get("eps_count") or DEFAULT_EPS_COUNT)
        if not 0 < eps_min < eps_max:
            raise ParameterError(f"need 0 < eps_min < eps_max, got {eps_min}, {eps_max}")
        eps_grid = np.geomspace(eps_max, eps_min, count)
        result = cone_scan(
            signal,
            self.wavelet_for(rc),
            rc.x0,
            self.alpha_for(rc),
            self.weight_for(rc),
            rc.k if rc.k is not None else 1,
            eps_grid,
            angles=self.angles,
            y_floor=self.y_floor,
        )
        return result.to_dict()

    def _lp_pair(self, rc: RunConfig) -> dict[str, Any]:
        signal = self.signal_for(rc)
        theta_path = rc.options.get("theta")
        if theta_path:
            theta = ingest(theta_path, rc.fmt)
            theta_info: dict[str, Any] = {"path": str(theta_path)}
        else:
            seed = rc.seed if rc.seed is not None else DEFAULT_SEED
            theta, theta_info = random_gaussian(signal, seed)
        pair = self.pair_for(rc)
        grid = self.grid_for(rc, signal, voices=PAIRING_VOICES)
        report = lp_pairing_report(signal, theta, pair, grid)
        return {"theta": theta_info, "pair": pair.name, **report.to_dict()}

    def _validate(self, rc: RunConfig) -> dict[str, Any]:
        pair = self.pair_for(rc)
        report = validate_lp_pair(pair, self.alpha_for(rc), self.validation_points, self.moment_tol)
        return report.to_dict()

    # -- entry point ---------------------------------------------------------

    def report_path(self, rc: RunConfig) -> Path | None:
        if rc.command == "gen":
            report = rc.options.get("report")
            return Path(report) if report else None
        return rc.output

    def run(self, rc: RunConfig) -> tuple[int, dict[str, Any]]:
        """Execute ``rc``; return the exit code and the report (also written to disk)."""
        result: Any = None
        error: ZygmundError | None = None
        try:
            rc.validate()
            result = self.handlers[rc.command](rc)
            code = 0
        except ZygmundError as exc:
            logger.error("%s failed: %s", rc.command, exc)
            error, code = exc, exc.exit_code
        report = reports.build_report(rc.command, rc.to_dict(), result, error, rc.seed)
        path = self.report_path(rc)
        if path is not None:
            reports.write_report(report, path)
        return code, report


def random_gaussian(signal: SampledSignal, seed: int) -> tuple[SampledSignal, dict[str, Any]]:
    """Seeded Gaussian test function well inside the signal window."""
    rng = np.random.default_rng(seed)
    span = signal.t1 - signal.t0
    center = float(signal.t0 + span * rng.uniform(0.375, 0.625))
    width = float(rng.uniform(0.5, 2.0))
    samples = np.exp(-0.5 * ((signal.t - center) / width) ** 2)
    theta = signal.with_samples(samples, name="theta")
    return theta, {"kind": "gaussian", "center": center, "width": width, "seed": seed}
