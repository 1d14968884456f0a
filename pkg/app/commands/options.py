"""
Options shared by every subcommand and the helpers that turn them into settings and output
"""

import functools
from typing import Callable, Optional

import click

from app.core.config import NumericsSettings, load_settings
from app.utilities.export import OutputFormat, write_output


def numerics_options(func: Callable) -> Callable:
    """--tol, --guard, --warn-band and --config, folded into a `settings` argument"""

    @click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
                  help="key=value file with numerics settings")
    @click.option("--warn-band", type=click.FloatRange(min=0, min_open=True),
                  help="Recurrence denominator below which near_resonance is set")
    @click.option("--guard", type=click.FloatRange(min=0, min_open=True),
                  help="Pole guard: denominator treated as an exact resonance")
    @click.option("--tol", type=click.FloatRange(min=0, min_open=True),
                  help="Tolerance (quadrature epsrel; comparison tolerance for verify and crosscheck)")
    @functools.wraps(func)
    def wrapper(*args, config_file=None, warn_band=None, guard=None, tol=None, **kwargs):
        settings = build_settings(config_file, tol=tol, guard=guard, warn_band=warn_band,
                                  tol_is_quadrature=getattr(func, "tol_is_quadrature", True))
        return func(*args, settings=settings, tol=tol, **kwargs)

    return wrapper


def output_options(func: Callable) -> Callable:
    """--format and --output"""

    @click.option("--output", type=click.Path(dir_okay=False), help="Write to this file instead of stdout")
    @click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=OutputFormat.JSON.value,
                  show_default=True, help="Output format")
    @functools.wraps(func)
    def wrapper(*args, fmt=OutputFormat.JSON.value, output=None, **kwargs):
        return func(*args, fmt=OutputFormat(fmt), output=output, **kwargs)

    return wrapper


def skip_resonances_option(func: Callable) -> Callable:
    return click.option("--skip-resonances", is_flag=True, default=False,
                        help="Drop frequencies inside the pole guard of an intermediate resonance")(func)


def diagnostics_option(func: Callable) -> Callable:
    return click.option("--diagnostics", is_flag=True, default=False,
                        help="Append near_threshold and error columns to csv and table output")(func)


def comparison_tolerance(func: Callable) -> Callable:
    """Mark a command whose --tol is a comparison tolerance, not a quadrature setting"""
    func.tol_is_quadrature = False
    return func


def build_settings(
    config_file: Optional[str],
    tol: Optional[float] = None,
    guard: Optional[float] = None,
    warn_band: Optional[float] = None,
    tol_is_quadrature: bool = True,
) -> NumericsSettings:
    """Flags win over the config file, which wins over built-in defaults"""
    return load_settings(
        config_file,
        epsrel=tol if tol_is_quadrature else None,
        pole_guard=guard,
        resonance_warn_band=warn_band,
    )


def emit(text: str, output: Optional[str]) -> None:
    """Print to stdout or write to --output"""
    path = write_output(text, output)
    if path is None:
        click.echo(text, nl=False)
    else:
        click.echo(f"wrote {path}", err=True)
