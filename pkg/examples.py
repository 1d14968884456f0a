"""
Example usage of the response library
"""

import numpy as np

from app.core.errors import ResonancePole
from app.core.models import Contour, RadialKind
from app.services.continuation_service import continuation_service
from app.services.observables_service import observables_service
from app.services.oracle_service import oracle_service
from app.services.scan_service import scan_service


def polarizability():
    """Example: tau2 below and above threshold"""
    for omega in (0.001, 0.2, 0.43, 1.0):
        tau = observables_service.tau2(omega)
        print(f"tau2({omega}) = {tau.value:.6f}  depth={tau.report.depth} near_resonance={tau.report.near_resonance}")


def gauge_identity():
    """Example: M(omega) equals omega^2 tau2(omega)"""
    omega = 0.8
    m = observables_service.kh_matrix(omega).value
    tau = observables_service.tau2(omega).value
    print(f"M = {m:.10f}, w^2 tau2 = {omega ** 2 * tau:.10f}")


def contour_robustness():
    """Example: the detoured contour gives the same value"""
    straight = observables_service.kh_matrix(2.0).value
    detour = observables_service.kh_matrix(2.0, contour=Contour.DETOUR).value
    print(f"straight {straight:.12f}, detour {detour:.12f}")


def resonance():
    """Example: an exact intermediate resonance is refused"""
    print("resonances:", continuation_service.resonance_locator(5))
    try:
        observables_service.kh_matrix(0.375)
    except ResonancePole as e:
        print(f"❌ {e.message}")


def derived_quantities():
    """Example: Stark shift, scattering and photoionization"""
    shift = observables_service.stark_shift(1.0, 1e14)
    print(f"Stark shift {shift.delta_e_ev:.3e} eV, width {shift.gamma_ev:.3e} eV")
    ratio, sigma_cm2 = observables_service.total_cross_section(1.0)
    print(f"sigma/sigma_T = {ratio:.6f} ({sigma_cm2:.3e} cm^2)")
    ion_a0, ion_cm2 = observables_service.photoionization_cross_section(1.0)
    print(f"sigma_ion = {ion_a0:.4f} a0^2 ({ion_cm2:.3e} cm^2)")


def ode_oracle():
    """Example: closed form against the direct radial solve"""
    omega = 0.2
    print(f"tau2 closed form {observables_service.tau2(omega).value.real:.10f}")
    print(f"tau2 ODE         {oracle_service.oracle_tau2(omega).real:.10f}")
    f = oracle_service.radial_closed_form(omega, RadialKind.F, np.array([0.5, 1.0, 2.0]))
    print("f(r) =", f.values)


def scan():
    """Example: a small scan across the first resonance"""
    for record in scan_service.scan_range(0.36, 0.39, 4):
        print(record.omega, record.m_re, record.near_resonance, record.error)


if __name__ == "__main__":
    print("=== Response Library Demo ===")
    polarizability()
    gauge_identity()
    contour_robustness()
    resonance()
    derived_quantities()
    ode_oracle()
    scan()
    print("\n🎉 Demo completed!")
