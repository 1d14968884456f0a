"""
Physical observables of the hydrogen ground state built from the reduced integrals

    tau2(w) = 2/(3 w^3) [I~(1,1,l~,4) - I(1,1,l,4)]
    M(w)    = 1 - 2/(3 w^2) [I(1,1,l,3) + I~(1,1,l~,3)]   (= w^2 tau2(w))
    P(+w)   = 2/(3 w^2) I(1,1,l,3),  P(-w) = 2/(3 w^2) I~(1,1,l~,3)
"""

import logging
import math
from typing import Optional, Tuple

from app.core.config import NumericsSettings
from app.core.errors import DomainError
from app.core.models import (BranchedLambda, ComplexResponse, ContinuationReport,
                             Contour, CrossSection, IntegralKind, IntegralSpec,
                             Observable, StarkShift)
from app.core.units import Alpha, BohrArea_cm2, I0_W_cm2, sig_t_cm2
from app.services.base_service import BaseService
from app.services.continuation_service import (ContinuationService,
                                               continuation_service)

logger = logging.getLogger(__name__)


class ObservablesService(BaseService):
    """Combines reduced integrals into tau2, M, P, Stark shifts and cross sections"""

    def __init__(self, settings: Optional[NumericsSettings] = None, continuation: Optional[ContinuationService] = None):
        super().__init__(settings)
        self.continuation = continuation or (ContinuationService(settings) if settings else continuation_service)

    def _lambda(self, omega: float) -> BranchedLambda:
        return self.continuation.kernels.lambda_pair(omega)

    def _pair(self, n: int, lam: BranchedLambda, contour: Optional[Contour]) -> Tuple[complex, complex, ContinuationReport]:
        """(I(1,1,l,n), I~(1,1,l~,n), report)"""
        plain, report = self.continuation.integral_i(
            IntegralSpec(p=1, q=1, n=n, kind=IntegralKind.PLAIN), lam, contour=contour
        )
        tilde, _ = self.continuation.integral_i(IntegralSpec(p=1, q=1, n=n, kind=IntegralKind.TILDE), lam)
        return plain, tilde, report

    # ------------------------------------------------------------------
    # Response functions
    # ------------------------------------------------------------------

    def tau2(self, omega: float, contour: Optional[Contour] = None) -> ComplexResponse:
        """
        Dynamic dipole polarizability tau2(omega)

        Args:
            omega: Photon frequency in Hartree
            contour: Path used above threshold; None picks one from omega

        Returns:
            ComplexResponse (static limit -4.5)
        """
        lam = self._lambda(omega)
        plain, tilde, report = self._pair(4, lam, contour)
        w = lam.omega
        value = 2.0 / (3.0 * w ** 3) * (tilde - plain)
        logger.debug("tau2(%.12g) = %r at depth %d", w, value, report.depth)
        return ComplexResponse(
            value=value, observable=Observable.TAU2, omega=w, report=report
        )

    def kh_matrix(self, omega: float, contour: Optional[Contour] = None) -> ComplexResponse:
        """
        Kramers-Heisenberg matrix element M(omega)

        Args:
            omega: Photon frequency in Hartree
            contour: Path used above threshold; None picks one from omega

        Returns:
            ComplexResponse (M -> 0 as omega -> 0, M -> 1 at high omega)
        """
        lam = self._lambda(omega)
        plain, tilde, report = self._pair(3, lam, contour)
        w = lam.omega
        value = 1.0 - 2.0 / (3.0 * w ** 2) * (plain + tilde)
        return ComplexResponse(
            value=value, observable=Observable.KH, omega=w, report=report
        )

    def p_term(self, omega_signed: float) -> ComplexResponse:
        """
        Single-sign term with M(w) = 1 - P(w) - P(-w)

        Args:
            omega_signed: +omega selects the plain sector, -omega the tilde sector

        Returns:
            ComplexResponse carrying the signed omega
        """
        if omega_signed == 0 or not math.isfinite(omega_signed):
            raise DomainError("P needs a non-zero finite frequency", omega=omega_signed)
        lam = self._lambda(abs(omega_signed))
        w = lam.omega
        if omega_signed > 0:
            value, report = self.continuation.integral_i(IntegralSpec(p=1, q=1, n=3), lam)
        else:
            value, report = self.continuation.integral_i(
                IntegralSpec(p=1, q=1, n=3, kind=IntegralKind.TILDE), lam
            )
        return ComplexResponse(
            value=2.0 / (3.0 * w ** 2) * value, observable=Observable.P, omega=omega_signed, report=report
        )

    # ------------------------------------------------------------------
    # Derived quantities
    # ------------------------------------------------------------------

    def stark_shift(self, omega: float, intensity_w_cm2: float) -> StarkShift:
        """
        ac Stark shift and width: dE - i Gamma = -(I/I0) tau2

        Args:
            omega: Photon frequency in Hartree
            intensity_w_cm2: Laser intensity in W/cm^2

        Returns:
            StarkShift in Hartree (eV fields derived)
        """
        if intensity_w_cm2 < 0 or not math.isfinite(intensity_w_cm2):
            raise DomainError("intensity must be non-negative", intensity=intensity_w_cm2)
        tau = self.tau2(omega)
        ratio = intensity_w_cm2 / I0_W_cm2
        return StarkShift(
            omega=tau.omega,
            intensity=intensity_w_cm2,
            delta_e=-ratio * tau.value.real,
            gamma=ratio * tau.value.imag,
            report=tau.report,
        )

    def cross_section_polarized(self, omega: float, eps_dot_eps_prime: float) -> float:
        """
        (eps . eps')^2 |M|^2, the polarized dispersion formula without its length prefactor

        Args:
            omega: Photon frequency in Hartree
            eps_dot_eps_prime: Overlap of incident and scattered polarizations

        Returns:
            Dimensionless ratio
        """
        if abs(eps_dot_eps_prime) > 1.0:
            raise DomainError("|eps . eps'| cannot exceed 1", eps_dot_eps_prime=eps_dot_eps_prime)
        m = self.kh_matrix(omega).value
        return eps_dot_eps_prime ** 2 * abs(m) ** 2

    def cross_section_unpolarized(self, omega: float, theta: float) -> CrossSection:
        """
        (1/2)(1 + cos^2 theta) |M|^2 in units of r0^2 per steradian

        Args:
            omega: Photon frequency in Hartree
            theta: Scattering angle in radians

        Returns:
            CrossSection
        """
        if not 0.0 <= theta <= math.pi:
            raise DomainError("theta must lie in [0, pi]", theta=theta)
        m = self.kh_matrix(omega)
        msquared = abs(m.value) ** 2
        return CrossSection(
            omega=m.omega,
            theta=theta,
            value=0.5 * (1.0 + math.cos(theta) ** 2) * msquared,
            msquared=msquared,
        )

    def total_cross_section(self, omega: float) -> Tuple[float, float]:
        """
        Total elastic cross section

        Args:
            omega: Photon frequency in Hartree

        Returns:
            (sigma / sigma_T, sigma in cm^2)
        """
        msquared = abs(self.kh_matrix(omega).value) ** 2
        return msquared, msquared * sig_t_cm2

    def photoionization_cross_section(self, omega: float) -> Tuple[float, float]:
        """
        One-photon ionization cross section from the width, 4 pi alpha omega Im tau2

        Args:
            omega: Photon frequency in Hartree

        Returns:
            (sigma in bohr^2, sigma in cm^2); zero below threshold
        """
        tau = self.tau2(omega)
        if tau.omega < 0.5:
            return 0.0, 0.0
        sigma = 4.0 * math.pi * Alpha * tau.omega * tau.value.imag
        return sigma, sigma * BohrArea_cm2


observables_service = ObservablesService()
