"""Command-line interface for wavelet regularity analysis.

Usage:
    zygmund gen weierstrass --s 0.5 --levels 12 --output data/w.f64
    zygmund cwt --input data/w.f64 --wavelet bandbump --output out/cwt.json
    zygmund estimate --input data/w.f64 --wavelet '{"kind": "bandbump", "a": 1, "b": 8}'
    zygmund reconstruct --input data/bump.f64 --pair meyer --margin 16
    zygmund norm --input data/w.f64 --alpha 0.5 --weight logpow:1
    zygmund scan-point --input data/cusp.f64 --x0 0 --alpha 0.5 --k 1
    zygmund lp-pair --input data/bump.f64 --seed 3
    zygmund validate --pair meyer --alpha 2
"""

from __future__ import annotations

import logging
import os
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from zygmund.errors import ZygmundError
from zygmund.pipeline.runner import (
    DEFAULT_CONFIG_PATH,
    DEFAULT_SEED,
    NORM_KINDS,
    Runner,
    RunConfig,
    config_section,
    load_config,
)
from zygmund.pipeline.signals import FORMATS, SIGNAL_KINDS

console = Console()


def configure_logging(config: dict[str, Any]) -> None:
    log_cfg = config_section(config, "logging")
    level = os.environ.get("ZYGMUND_LOG_LEVEL") or log_cfg.get("level", "INFO")
    if log_cfg.get("rich", True):
        handler: logging.Handler = RichHandler(
            console=Console(stderr=True), show_path=False, rich_tracebacks=True
        )
        logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)
    else:
        logging.basicConfig(
            level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", force=True
        )


def grid_options(func: Callable[..., Any]) -> Callable[..., Any]:
    for option in reversed(
        [
            click.option("--ymin", "y_min", type=float, help="Smallest scale"),
            click.option("--ymax", "y_max", type=float, help="Largest scale (<= 1 for norms)"),
            click.option("--voices", type=int, help="Scales per octave"),
            click.option("--margin", type=float, help="Interior margin on each side"),
        ]
    ):
        func = option(func)
    return func


def io_options(func: Callable[..., Any]) -> Callable[..., Any]:
    for option in reversed(
        [
            click.option("--input", "input_path", type=click.Path(path_type=Path), help="Signal file"),
            click.option("--output", "output_path", type=click.Path(path_type=Path), help="JSON report"),
            click.option("--format", "fmt", type=click.Choice(FORMATS), help="Signal file format"),
        ]
    ):
        func = option(func)
    return func


def _execute(ctx: click.Context, rc: RunConfig) -> None:
    try:
        runner = Runner(ctx.obj["config"])
    except ZygmundError as exc:
        console.print(f"[red]Error ({exc.code}):[/red] {exc}")
        ctx.exit(exc.exit_code)
    code, report = runner.run(rc)
    show_summary(report)
    ctx.exit(code)


def show_summary(report: dict[str, Any]) -> None:
    if report["status"] != "ok":
        error = report["error"]
        console.print(f"[red]Error ({error['code']}):[/red] {error['message']}")
        return
    result = report["result"]
    table = Table(title=f"zygmund {report['command']}")
    table.add_column("Field", style="cyan")
    table.add_column("Value", justify="right")
    if report["command"] == "validate":
        for check in result["checks"]:
            mark = "[green]pass[/green]" if check["passed"] else "[red]fail[/red]"
            table.add_row(check["name"], f"{mark} {check['measured']:.6g}")
    else:
        for key, value in result.items():
            if isinstance(value, float):
                table.add_row(key, f"{value:.6g}")
            elif isinstance(value, (int, str)):
                table.add_row(key, str(value))
            elif isinstance(value, dict) and key == "components":
                for name, part in value.items():
                    table.add_row(f"  {name}", f"{part:.6g}")
    console.print(table)


@click.group()
@click.option("--config", "config_path", default=None, help="Config file path")
@click.pass_context
def cli(ctx: click.Context, config_path: str | None) -> None:
    """Wavelet characterisation of weighted Zygmund regularity."""
    ctx.ensure_object(dict)
    path = config_path or os.environ.get("ZYGMUND_CONFIG") or DEFAULT_CONFIG_PATH
    try:
        ctx.obj["config"] = load_config(path)
        configure_logging(ctx.obj["config"])
    except ZygmundError as exc:
        console.print(f"[red]Error ({exc.code}):[/red] {exc}")
        ctx.exit(exc.exit_code)


@cli.command("gen")
@click.argument("kind", type=click.Choice(SIGNAL_KINDS))
@click.option("--output", "output_path", type=click.Path(path_type=Path), required=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS))
@click.option("--report", "report_path", type=click.Path(path_type=Path), help="JSON report")
@click.option("--t-min", type=float)
@click.option("--t-max", type=float)
@click.option("--n", type=int)
@click.option("--s", type=float, help="Weierstrass exponent")
@click.option("--levels", type=int, help="Weierstrass levels")
@click.option("--gamma", type=float, help="Cusp exponent")
@click.option("--log-power", type=float, help="Cusp log-factor exponent")
@click.option("--center", type=float, help="Cusp or bump centre")
@click.option("--band-lo", type=float, help="Band bump lower edge")
@click.option("--band-hi", type=float, help="Band bump upper edge")
@click.option("--omega", type=float, help="Cosine frequency")
@click.pass_context
def gen_command(
    ctx: click.Context,
    kind: str,
    output_path: Path,
    fmt: str | None,
    report_path: Path | None,
    t_min: float | None,
    t_max: float | None,
    n: int | None,
    s: float | None,
    levels: int | None,
    gamma: float | None,
    log_power: float | None,
    center: float | None,
    band_lo: float | None,
    band_hi: float | None,
    omega: float | None,
) -> None:
    """Generate a synthetic test signal."""
    params = {
        "weierstrass": {"s": s, "levels": levels},
        "cusp": {"gamma": gamma, "center": center, "log_power": log_power},
        "bandbump": {"a": band_lo, "b": band_hi, "center": center},
        "cos": {"omega": omega},
    }[kind]
    rc = RunConfig(
        command="gen",
        output=output_path,
        fmt=fmt,
        options={
            "kind": kind,
            "params": {key: value for key, value in params.items() if value is not None},
            "t_min": t_min,
            "t_max": t_max,
            "n": n,
            "report": report_path,
        },
    )
    _execute(ctx, rc)


@cli.command("cwt")
@io_options
@click.option("--wavelet", help="Wavelet spec: kind name, inline JSON or JSON file")
@click.option("--pair", help="LP pair spec (its psi is used without --wavelet)")
@grid_options
@click.pass_context
def cwt_command(ctx: click.Context, input_path: Path | None, output_path: Path | None,
                fmt: str | None, wavelet: str | None, pair: str | None, **grid: Any) -> None:
    """Compute the scalogram and export it next to the report."""
    rc = RunConfig(
        command="cwt",
        input=input_path,
        output=output_path,
        fmt=fmt,
        wavelet=wavelet,
        pair=pair,
        **grid,
    )
    _execute(ctx, rc)


@cli.command("reconstruct")
@io_options
@click.option("--pair", help="LP pair spec")
@click.option("--write", "write_path", type=click.Path(path_type=Path), help="Write the reconstruction")
@grid_options
@click.pass_context
def reconstruct_command(ctx: click.Context, input_path: Path | None, output_path: Path | None,
                        fmt: str | None, pair: str | None, write_path: Path | None,
                        **grid: Any) -> None:
    """Run the reconstruction identity and report the interior error."""
    rc = RunConfig(
        command="reconstruct",
        input=input_path,
        output=output_path,
        fmt=fmt,
        pair=pair,
        options={"write": write_path},
        **grid,
    )
    _execute(ctx, rc)


@cli.command("norm")
@io_options
@click.option("--norm", "norm_kind", type=click.Choice(NORM_KINDS), default="zygmund")
@click.option("--pair", help="LP pair spec (zygmund norm)")
@click.option("--weight", help="Weight spec, e.g. logpow:1")
@click.option("--alpha", type=float)
@click.option("--p", type=int, help="Derivative order (second-difference norm)")
@click.option("--k", type=int, help="Polynomial weight order (schwartz)")
@click.option("--m", type=int, help="Derivative order (schwartz)")
@grid_options
@click.pass_context
def norm_command(ctx: click.Context, input_path: Path | None, output_path: Path | None,
                 fmt: str | None, norm_kind: str, pair: str | None, weight: str | None,
                 alpha: float | None, p: int | None, k: int | None, m: int | None,
                 **grid: Any) -> None:
    """Evaluate a Zygmund, Hoelder, second-difference or Schwartz norm."""
    rc = RunConfig(
        command="norm",
        input=input_path,
        output=output_path,
        fmt=fmt,
        pair=pair,
        weight=weight,
        alpha=alpha,
        k=k,
        options={"norm": norm_kind, "p": p, "m": m},
        **grid,
    )
    _execute(ctx, rc)


@cli.command("estimate")
@io_options
@click.option("--scalogram", "scalogram_path", type=click.Path(path_type=Path),
              help="Use an exported scalogram instead of --input")
@click.option("--wavelet", help="Wavelet spec")
@click.option("--pair", help="LP pair spec (its psi is used without --wavelet)")
@click.option("--x0", type=float, help="Fit inside the cone at x0")
@click.option("--cone-width", type=float, default=1.0, show_default=True)
@click.option("--log-basis", is_flag=True, help="Also fit the log(1 + |log y|) term")
@click.option("--scale-lo", type=float)
@click.option("--scale-hi", type=float)
@grid_options
@click.pass_context
def estimate_command(ctx: click.Context, input_path: Path | None, output_path: Path | None,
                     fmt: str | None, scalogram_path: Path | None, wavelet: str | None,
                     pair: str | None, x0: float | None, cone_width: float, log_basis: bool,
                     scale_lo: float | None, scale_hi: float | None, **grid: Any) -> None:
    """Fit (alpha, beta) from scalogram maxima, globally or in a cone."""
    rc = RunConfig(
        command="estimate",
        input=input_path,
        output=output_path,
        fmt=fmt,
        wavelet=wavelet,
        pair=pair,
        x0=x0,
        options={
            "scalogram": scalogram_path,
            "cone_width": cone_width,
            "log_basis": log_basis,
            "scale_lo": scale_lo,
            "scale_hi": scale_hi,
        },
        **grid,
    )
    _execute(ctx, rc)


@cli.command("scan-point")
@io_options
@click.option("--wavelet", help="Wavelet spec")
@click.option("--pair", help="LP pair spec (its psi is used without --wavelet)")
@click.option("--weight", help="Weight spec, e.g. logpow:1")
@click.option("--x0", type=float)
@click.option("--alpha", type=float)
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--eps-max", type=float)
@click.option("--eps-min", type=float)
@click.option("--eps-count", type=int)
@click.pass_context
def scan_point_command(ctx: click.Context, input_path: Path | None, output_path: Path | None,
                       fmt: str | None, wavelet: str | None, pair: str | None,
                       weight: str | None, x0: float | None, alpha: float | None, k: int,
                       eps_max: float | None, eps_min: float | None,
                       eps_count: int | None) -> None:
    """Cone scan of the wavelet transform around x0."""
    rc = RunConfig(
        command="scan-point",
        input=input_path,
        output=output_path,
        fmt=fmt,
        wavelet=wavelet,
        pair=pair,
        weight=weight,
        x0=x0,
        alpha=alpha,
        k=k,
        options={"eps_max": eps_max, "eps_min": eps_min, "eps_count": eps_count},
    )
    _execute(ctx, rc)


@cli.command("lp-pair")
@io_options
@click.option("--theta", "theta_path", type=click.Path(path_type=Path),
              help="Test function on the same grid (default: seeded Gaussian)")
@click.option("--pair", help="LP pair spec")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@grid_options
@click.pass_context
def lp_pair_command(ctx: click.Context, input_path: Path | None, output_path: Path | None,
                    fmt: str | None, theta_path: Path | None, pair: str | None, seed: int,
                    **grid: Any) -> None:
    """Compare the low-pass / wavelet split of <f, theta> with the direct pairing."""
    rc = RunConfig(
        command="lp-pair",
        input=input_path,
        output=output_path,
        fmt=fmt,
        pair=pair,
        seed=seed,
        options={"theta": theta_path},
        **grid,
    )
    _execute(ctx, rc)


@cli.command("validate")
@click.option("--pair", help="LP pair spec")
@click.option("--alpha", type=float, required=True)
@click.option("--output", "output_path", type=click.Path(path_type=Path), help="JSON report")
@click.pass_context
def validate_command(ctx: click.Context, pair: str | None, alpha: float,
                     output_path: Path | None) -> None:
    """Check the LP-pair conditions for a regularity order alpha."""
    rc = RunConfig(
        command="validate",
        output=output_path,
        pair=pair,
        alpha=alpha,
    )
    _execute(ctx, rc)


def main(argv: list[str] | None = None) -> None:
    """Console entry point; click parse errors exit with 1 like every usage error."""
    load_dotenv()
    try:
        code = cli.main(args=argv, prog_name="zygmund", standalone_mode=False)
    except click.exceptions.Abort:
        code = 1
    except click.ClickException as exc:
        exc.show()
        code = 1
    sys.exit(code or 0)


if __name__ == "__main__":
    main()
