"""
Direct solution of the Dalgarno-Lewis radial equations

    r g'' + (4 - 2r) g' + (+-2 omega r - 2) g = source,   source = 2r (f, f~) or 2i (u, u~)

(upper sign for f and u). With y = r^2 e^{-r} g the equation becomes

    y'' = (2/r^2 - 2/r + 1 -+ 2 omega) y + r e^{-r} source

which is discretized with Numerov on a uniform grid, y(0) = y(R) = 0, and solved as a banded system.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import solve_banded

from app.core.config import NumericsSettings
from app.core.errors import NonConvergence, OracleRangeError
from app.core.models import KernelParams, RadialKind, RadialSolution
from app.services.base_service import BaseService
from app.services.continuation_service import (ContinuationService,
                                               continuation_service)

logger = logging.getLogger(__name__)

_PLAIN = (RadialKind.F, RadialKind.U)
_INHOMOGENEOUS_R = (RadialKind.F, RadialKind.F_TILDE)
# scaled residual above which a solve is rejected
_REJECT_RESIDUAL = 1e-8


class OracleService(BaseService):
    """Finite-difference solutions of the radial equations and the observables they imply"""

    def __init__(self, settings: Optional[NumericsSettings] = None, continuation: Optional[ContinuationService] = None):
        super().__init__(settings)
        self.continuation = continuation or (ContinuationService(settings) if settings else continuation_service)

    # ------------------------------------------------------------------
    # Validity
    # ------------------------------------------------------------------

    def _check_range(self, omega: float, which: RadialKind, allow_above_resonance: bool) -> float:
        omega = self.validate_frequency(omega)
        if which not in _PLAIN:
            return omega
        if omega >= 0.5 - self.settings.threshold_guard:
            raise OracleRangeError(
                f"the plain-sector equation has no decaying solution at omega={omega!r} >= 0.5",
                omega=omega,
            )
        if omega >= self.settings.oracle_omega_max and not allow_above_resonance:
            raise OracleRangeError(
                f"omega={omega!r} is above the first resonance; pass allow_above_resonance to solve anyway",
                omega=omega,
                omega_max=self.settings.oracle_omega_max,
            )
        return omega

    # ------------------------------------------------------------------
    # Numerov solve
    # ------------------------------------------------------------------

    @staticmethod
    def _coefficients(r: np.ndarray, omega: float, which: RadialKind) -> Tuple[np.ndarray, np.ndarray]:
        sign = -1.0 if which in _PLAIN else 1.0
        q = 2.0 / r ** 2 - 2.0 / r + 1.0 + sign * 2.0 * omega
        if which in _INHOMOGENEOUS_R:
            s = (2.0 * r * r * np.exp(-r)).astype(complex)
        else:
            s = 2j * r * np.exp(-r)
        return q, s

    def _reduced(self, omega: float, which: RadialKind, step: float) -> Tuple[np.ndarray, np.ndarray, complex]:
        """
        Reduced solution y on [0, R]

        Returns:
            (grid, y, y''(0)); y[0] = y[-1] = 0
        """
        n = int(round(self.settings.oracle_r_max / step))
        if n < 8:
            raise NonConvergence("radial grid has fewer than 8 intervals", step=step)
        grid = np.linspace(0.0, n * step, n + 1)
        h2 = step * step

        # unknowns y_1 .. y_{n-1}
        r = grid[1:-1]
        q, s = self._coefficients(r, omega, which)
        a = 1.0 - h2 * q / 12.0
        b = -2.0 - 10.0 * h2 * q / 12.0

        size = n - 1
        ab = np.zeros((4, size), dtype=complex)
        ab[2, :] = b
        ab[1, 1:] = a[1:]
        ab[3, :-1] = a[:-1]

        # Regular origin: y''(0) = (6 y1 - 1.5 y2 + (2/9) y3) / h^2 for y = c r^2 + O(r^3)
        ab[2, 0] -= 0.5
        ab[1, 1] += 0.125
        ab[0, 2] = -1.0 / 54.0

        s_full = np.concatenate(([0.0], s, [0.0]))
        rhs = h2 / 12.0 * (s_full[2:] + 10.0 * s_full[1:-1] + s_full[:-2])

        try:
            interior = solve_banded((1, 2), ab, rhs)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise NonConvergence(f"banded solve failed at omega={omega!r}: {e}", omega=omega)
        if not np.all(np.isfinite(interior)):
            raise NonConvergence(f"non-finite radial solution at omega={omega!r}", omega=omega)

        y = np.concatenate(([0.0], interior, [0.0]))
        curvature = (6.0 * y[1] - 1.5 * y[2] + (2.0 / 9.0) * y[3]) / h2
        return grid, y, complex(curvature)

    def _residual(self, grid: np.ndarray, y: np.ndarray, omega: float, which: RadialKind) -> float:
        """Max |y'' - Q y - S| over interior points, relative to max |S|"""
        h = grid[1] - grid[0]
        r = grid[2:-2]
        q, s = self._coefficients(r, omega, which)
        second = (-y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]) / (12.0 * h * h)
        return float(np.max(np.abs(second - q * y[2:-2] - s)) / np.max(np.abs(s)))

    def _richardson(self, omega: float, which: RadialKind) -> Tuple[np.ndarray, np.ndarray, complex, float]:
        """Numerov solutions at h and h/2 combined on the coarse grid"""
        step = self.settings.oracle_step
        grid, coarse, c0 = self._reduced(omega, which, step)
        _, fine, c1 = self._reduced(omega, which, 0.5 * step)
        y = (16.0 * fine[::2] - coarse) / 15.0
        curvature = (16.0 * c1 - c0) / 15.0
        residual = self._residual(grid, y, omega, which)
        if residual > _REJECT_RESIDUAL:
            raise NonConvergence(
                f"radial solution residual {residual:.2e} at omega={omega!r}", omega=omega, residual=residual
            )
        return grid, y, curvature, residual

    def solve_dalgarno(self, omega: float, which: RadialKind, allow_above_resonance: bool = False) -> RadialSolution:
        """
        Regular, decaying solution of one radial equation

        Args:
            omega: Photon frequency in Hartree
            which: f, f~, u or u~
            allow_above_resonance: Solve the plain sector between 0.375 and 0.5 too

        Returns:
            RadialSolution holding g(r) = e^r y(r) / r^2 on the grid
        """
        omega = self._check_range(omega, which, allow_above_resonance)
        grid, y, curvature, residual = self._richardson(omega, which)

        values = np.empty_like(y)
        values[1:] = np.exp(grid[1:]) * y[1:] / grid[1:] ** 2
        values[0] = 0.5 * curvature
        logger.debug("solved %s at omega=%.12g, residual %.2e", which.value, omega, residual)
        return RadialSolution(omega=omega, which=which, grid=grid, values=values, residual=residual)

    # ------------------------------------------------------------------
    # Observables by radial quadrature
    # ------------------------------------------------------------------

    def _moment(self, omega: float, which: RadialKind, power: int, allow: bool) -> complex:
        """int r^power e^{-2r} g(r) dr = int r^(power-2) e^{-r} y(r) dr"""
        omega = self._check_range(omega, which, allow)
        grid, y, _, _ = self._richardson(omega, which)
        weight = grid ** (power - 2) * np.exp(-grid)
        return complex(simpson(weight * y, x=grid))

    def oracle_tau2(self, omega: float, allow_above_resonance: bool = False) -> complex:
        """
        tau2 = (4/3) int r^4 e^{-2r} (f + f~) dr

        Args:
            omega: Photon frequency in Hartree
            allow_above_resonance: Extend past the first resonance

        Returns:
            tau2 from the ODE solutions
        """
        plain = self._moment(omega, RadialKind.F, 4, allow_above_resonance)
        tilde = self._moment(omega, RadialKind.F_TILDE, 4, allow_above_resonance)
        return 4.0 / 3.0 * (plain + tilde)

    def oracle_kh(self, omega: float, allow_above_resonance: bool = False) -> complex:
        """
        M = 1 - (4i/3) int r^3 e^{-2r} (u + u~) dr

        Args:
            omega: Photon frequency in Hartree
            allow_above_resonance: Extend past the first resonance

        Returns:
            M from the ODE solutions
        """
        plain = self._moment(omega, RadialKind.U, 3, allow_above_resonance)
        tilde = self._moment(omega, RadialKind.U_TILDE, 3, allow_above_resonance)
        return 1.0 - 4.0j / 3.0 * (plain + tilde)

    # ------------------------------------------------------------------
    # Closed forms
    # ------------------------------------------------------------------

    def _phi_family(self, omega: float, which: RadialKind, r: float, dp: int) -> complex:
        lam = self.continuation.kernels.lambda_pair(omega)
        params = KernelParams(p=1 + dp, q=1)
        if which in _PLAIN:
            return self.continuation.phi(params, lam, r)[0]
        return self.continuation.phi_tilde(params, lam, r)

    @staticmethod
    def _affine(omega: float, which: RadialKind) -> Tuple[complex, complex]:
        """(constant, coefficient of Phi) in g = constant + coefficient * Phi"""
        w = omega
        return {
            RadialKind.F: (1.0 / w, -1.0 / (2.0 * w ** 3)),
            RadialKind.F_TILDE: (-1.0 / w, 1.0 / (2.0 * w ** 3)),
            RadialKind.U: (0.0, -1j / (2.0 * w ** 2)),
            RadialKind.U_TILDE: (0.0, -1j / (2.0 * w ** 2)),
        }[which]

    def radial_closed_form(self, omega: float, which: RadialKind, grid: np.ndarray) -> RadialSolution:
        """
        f, f~, u, u~ from Phi and Phi~

        Args:
            omega: Photon frequency in Hartree
            which: Radial function
            grid: Radii (bohr)

        Returns:
            RadialSolution on the given grid
        """
        omega = self.validate_frequency(omega)
        const, coef = self._affine(omega, which)
        grid = np.asarray(grid, dtype=float)
        values = np.array([const + coef * self._phi_family(omega, which, r, 0) for r in grid], dtype=complex)
        return RadialSolution(omega=omega, which=which, grid=grid, values=values)

    def closed_form_residual(self, omega: float, which: RadialKind, r: float) -> complex:
        """
        Left side minus source of the radial equation for the closed form at r

        Uses Phi' = -Phi(p+1) + (1+l) Phi and Phi'' = Phi(p+2) - 2(1+l) Phi(p+1) + (1+l)^2 Phi.

        Args:
            omega: Photon frequency in Hartree
            which: Radial function
            r: Radius (bohr)

        Returns:
            Residual (zero for an exact solution)
        """
        omega = self.validate_frequency(omega)
        lam = self.continuation.kernels.lambda_pair(omega)
        shift = 1.0 + (lam.lam if which in _PLAIN else lam.lam_tilde)
        phi0, phi1, phi2 = (self._phi_family(omega, which, r, dp) for dp in (0, 1, 2))

        const, coef = self._affine(omega, which)
        g = const + coef * phi0
        g1 = coef * (-phi1 + shift * phi0)
        g2 = coef * (phi2 - 2.0 * shift * phi1 + shift ** 2 * phi0)

        sign = 1.0 if which in _PLAIN else -1.0
        source = 2.0 * r if which in _INHOMOGENEOUS_R else 2j
        return r * g2 + (4.0 - 2.0 * r) * g1 + (sign * 2.0 * omega * r - 2.0) * g - source


oracle_service = OracleService()
