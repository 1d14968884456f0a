"""
Reference-table verification and the closed-form vs ODE cross-check
"""

import click

from app.commands.options import comparison_tolerance, emit, numerics_options, output_options
from app.core.errors import VerificationFailure
from app.core.models import TableId
from app.services.observables_service import ObservablesService
from app.services.oracle_service import OracleService
from app.services.verification_service import ToleranceMode, VerificationService
from app.utilities.export import render_dicts, render_report
from app.utils import relative_deviation

# crosscheck agreement threshold when --tol is not given
CROSSCHECK_TOL = 1e-8


@click.command("verify")
@click.option("--table", "table_ids", type=click.Choice([t.value for t in TableId] + ["all"]), default="all",
              show_default=True, help="Embedded table to recompute")
@click.option("--mode", type=click.Choice([m.value for m in ToleranceMode]), default=None,
              help="printed: 1.5 last-digit units (default), strict: 0.5 units, relative: --tol")
@output_options
@numerics_options
@comparison_tolerance
def verify_command(table_ids, mode, fmt, output, settings, tol):
    """Recompute reference tables and compare at printed precision; exit 1 on any failing row"""
    if mode is None:
        mode = ToleranceMode.RELATIVE if tol is not None else ToleranceMode.PRINTED
    mode = ToleranceMode(mode)
    if mode == ToleranceMode.RELATIVE and tol is None:
        raise click.UsageError("--mode relative needs --tol")

    tables = list(TableId) if table_ids == "all" else [TableId(table_ids)]
    service = VerificationService(settings)
    reports = [service.verify_table(t, mode, tol) for t in tables]

    emit("".join(render_report(report, fmt) for report in reports), output)

    failing = {r.table.value: len(r.failures) for r in reports if not r.passed}
    if failing:
        raise VerificationFailure(f"failing rows: {failing}", failing=failing)


@click.command("crosscheck")
@click.option("--omega", "omegas", type=float, multiple=True, default=(0.05, 0.1, 0.2, 0.3), show_default=True,
              help="Frequencies to compare (repeatable)")
@click.option("--allow-above-resonance", is_flag=True, default=False,
              help="Let the ODE solve run between the first resonance and threshold")
@output_options
@numerics_options
@comparison_tolerance
def crosscheck_command(omegas, allow_above_resonance, fmt, output, settings, tol):
    """Compare closed-form tau2 and M with the direct radial ODE solution"""
    tol = tol or CROSSCHECK_TOL
    observables = ObservablesService(settings)
    oracle = OracleService(settings)

    rows = []
    for omega in omegas:
        tau = observables.tau2(omega).value
        m = observables.kh_matrix(omega).value
        tau_ode = oracle.oracle_tau2(omega, allow_above_resonance)
        m_ode = oracle.oracle_kh(omega, allow_above_resonance)
        tau_dev, m_dev = relative_deviation(tau_ode, tau), relative_deviation(m_ode, m)
        rows.append({
            "omega": omega,
            "tau2": tau.real,
            "tau2_ode": tau_ode.real,
            "tau2_dev": tau_dev,
            "m": m.real,
            "m_ode": m_ode.real,
            "m_dev": m_dev,
            "passed": tau_dev <= tol and m_dev <= tol,
        })

    emit(render_dicts(rows, fmt), output)

    failing = [row["omega"] for row in rows if not row["passed"]]
    if failing:
        raise VerificationFailure(f"closed form and ODE disagree beyond {tol:g} at omega={failing}", failing=failing)
