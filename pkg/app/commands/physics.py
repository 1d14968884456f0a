"""
Derived physics: resonance positions, scattering cross sections, ac Stark shifts
"""

import math

import click

from app.commands.options import emit, numerics_options, output_options
from app.core.units import re_cm
from app.services.continuation_service import ContinuationService
from app.services.observables_service import ObservablesService
from app.utilities.export import render_dicts, render_model


@click.command("resonances")
@click.option("--n-max", type=click.IntRange(min=2), default=10, show_default=True,
              help="Largest principal quantum number")
@output_options
def resonances_command(n_max, fmt, output):
    """List the intermediate resonances omega_n = (1 - 1/n^2)/2"""
    omegas = ContinuationService.resonance_locator(n_max)
    rows = [{"n": n, "omega_n": w} for n, w in zip(range(2, n_max + 1), omegas)]
    emit(render_dicts(rows, fmt), output)


@click.command("xsection")
@click.option("--omega", type=float, required=True, help="Photon frequency (Hartree)")
@click.option("--theta", type=click.FloatRange(0.0, 180.0), default=90.0, show_default=True,
              help="Scattering angle in degrees (unpolarized)")
@click.option("--eps-dot", type=click.FloatRange(-1.0, 1.0), default=None,
              help="Polarization overlap eps.eps' (polarized formula)")
@output_options
@numerics_options
def xsection_command(omega, theta, eps_dot, fmt, output, settings, tol):
    """Elastic scattering ratios and the photoionization cross section at one frequency"""
    observables = ObservablesService(settings)
    differential = observables.cross_section_unpolarized(omega, math.radians(theta))
    ratio, sigma_cm2 = observables.total_cross_section(omega)
    ion_a0, ion_cm2 = observables.photoionization_cross_section(omega)

    row = {
        "omega": differential.omega,
        "theta_deg": theta,
        "m_abs2": differential.msquared,
        "dsigma_unpolarized": differential.value,
        "dsigma_cm2_sr": differential.value * re_cm ** 2,
        "sigma_over_thomson": ratio,
        "sigma_cm2": sigma_cm2,
        "sigma_ion_a0": ion_a0,
        "sigma_ion_cm2": ion_cm2,
    }
    if eps_dot is not None:
        row["dsigma_polarized"] = observables.cross_section_polarized(omega, eps_dot)
    emit(render_dicts([row], fmt), output)


@click.command("stark")
@click.option("--omega", type=float, required=True, help="Photon frequency (Hartree)")
@click.option("--intensity", type=click.FloatRange(min=0.0), required=True, help="Laser intensity (W/cm^2)")
@output_options
@numerics_options
def stark_command(omega, intensity, fmt, output, settings, tol):
    """ac Stark shift and ionization width of the ground state"""
    shift = ObservablesService(settings).stark_shift(omega, intensity)
    emit(render_model(shift, fmt), output)
