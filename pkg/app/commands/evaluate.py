"""
Single-point evaluation and frequency scans
"""

import logging

import click

from app.commands.options import (diagnostics_option, emit, numerics_options,
                                  output_options, skip_resonances_option)
from app.core.errors import DomainError
from app.core.models import Observable
from app.services.scan_service import ScanService
from app.utilities.export import render_records
from app.utils import linear_grid, log_grid

logger = logging.getLogger(__name__)

_OBSERVABLES = {
    "tau2": (Observable.TAU2,),
    "kh": (Observable.KH,),
    "all": (Observable.TAU2, Observable.KH),
}


@click.command("eval")
@click.option("--omega", type=float, required=True, help="Photon frequency (Hartree)")
@click.option("--obs", type=click.Choice(list(_OBSERVABLES)), default="all", show_default=True,
              help="Which response to compute")
@skip_resonances_option
@diagnostics_option
@output_options
@numerics_options
def eval_command(omega, obs, skip_resonances, diagnostics, fmt, output, settings, tol):
    """Evaluate tau2 and/or M at one frequency"""
    scanner = ScanService(settings)
    if skip_resonances and scanner.in_resonance_band(omega):
        logger.warning("omega=%.12g is inside a resonance guard band; skipped", omega)
        emit(render_records([], fmt, diagnostics=diagnostics), output)
        return
    record = scanner.evaluate(omega, _OBSERVABLES[obs], strict=True)
    emit(render_records([record], fmt, single=True, diagnostics=diagnostics), output)


@click.command("scan")
@click.option("--start", "omega_start", type=float, required=True, help="First frequency (Hartree)")
@click.option("--end", "omega_end", type=float, required=True, help="Last frequency (Hartree)")
@click.option("--steps", type=click.IntRange(min=2), default=50, show_default=True, help="Grid points, endpoints included")
@click.option("--log", "log_spacing", is_flag=True, default=False, help="Logarithmic instead of linear spacing")
@click.option("--obs", type=click.Choice(list(_OBSERVABLES)), default="all", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), help="Worker threads (default from settings)")
@skip_resonances_option
@diagnostics_option
@output_options
@numerics_options
def scan_command(omega_start, omega_end, steps, log_spacing, obs, workers, skip_resonances, diagnostics,
                 fmt, output, settings, tol):
    """Evaluate over a frequency grid; per-point failures are reported in the row"""
    if not 0.0 < omega_start < omega_end:
        raise DomainError("scan needs 0 < start < end", start=omega_start, end=omega_end)
    grid = log_grid if log_spacing else linear_grid
    records = ScanService(settings).scan(
        grid(omega_start, omega_end, steps), _OBSERVABLES[obs], skip_resonances=skip_resonances, workers=workers
    )
    emit(render_records(records, fmt, diagnostics=diagnostics), output)
