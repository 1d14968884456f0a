"""
Tests for the radial ODE oracle and the closed-form radial functions
"""

import numpy as np
import pytest

from app.core.errors import DomainError, OracleRangeError
from app.core.models import RadialKind
from app.utils import relative_deviation


class TestOracleEquivalence:

    @pytest.mark.parametrize("omega", [0.05, 0.1, 0.2, 0.3])
    def test_tau2(self, observables, oracle, omega):
        """Closed-form and ODE tau2 agree to 1e-8"""
        closed = observables.tau2(omega).value
        assert relative_deviation(oracle.oracle_tau2(omega), closed) < 1e-8

    @pytest.mark.parametrize("omega", [0.05, 0.1, 0.2, 0.3])
    def test_kh(self, observables, oracle, omega):
        """Closed-form and ODE M agree to 1e-8"""
        closed = observables.kh_matrix(omega).value
        assert relative_deviation(oracle.oracle_kh(omega), closed) < 1e-8


class TestDalgarnoSolve:

    @pytest.mark.parametrize("which", list(RadialKind))
    def test_residual_small(self, oracle, which):
        """Every radial solution has a scaled residual below 1e-8"""
        solution = oracle.solve_dalgarno(0.2, which)
        assert solution.which == which
        assert solution.residual < 1e-8
        assert solution.grid[0] == 0.0
        assert np.all(np.isfinite(solution.values))

    def test_static_solution(self, oracle):
        """At small omega f approaches -1 - r/2"""
        solution = oracle.solve_dalgarno(1e-4, RadialKind.F)
        mask = solution.grid <= 5.0
        expected = -1.0 - 0.5 * solution.grid[mask]
        assert np.allclose(solution.values[mask].real, expected, rtol=1e-2)

    @pytest.mark.parametrize("omega", [0.1, 0.3])
    def test_velocity_length_links(self, oracle, omega):
        """u = i(omega f - 1) and u~ = -i(omega f~ + 1) pointwise"""
        f = oracle.solve_dalgarno(omega, RadialKind.F)
        u = oracle.solve_dalgarno(omega, RadialKind.U)
        f_t = oracle.solve_dalgarno(omega, RadialKind.F_TILDE)
        u_t = oracle.solve_dalgarno(omega, RadialKind.U_TILDE)
        mask = (f.grid >= 0.5) & (f.grid <= 10.0)
        assert np.allclose(u.values[mask], 1j * (omega * f.values[mask] - 1.0), rtol=1e-10, atol=1e-10)
        assert np.allclose(u_t.values[mask], -1j * (omega * f_t.values[mask] + 1.0), rtol=1e-10, atol=1e-10)

    def test_tilde_sector_above_threshold(self, oracle):
        """The tilde equation is solvable at any omega"""
        solution = oracle.solve_dalgarno(2.0, RadialKind.F_TILDE)
        assert solution.residual < 1e-8

    def test_above_first_resonance_needs_flag(self, oracle):
        """The plain sector past 3/8 is refused unless allowed"""
        with pytest.raises(OracleRangeError):
            oracle.solve_dalgarno(0.4, RadialKind.F)
        assert oracle.solve_dalgarno(0.4, RadialKind.F, allow_above_resonance=True).residual < 1e-8

    def test_plain_sector_above_threshold(self, oracle):
        """No decaying plain-sector solution above threshold"""
        with pytest.raises(OracleRangeError):
            oracle.solve_dalgarno(0.6, RadialKind.U, allow_above_resonance=True)

    def test_invalid_frequency(self, oracle):
        """Non-positive omega is a DomainError"""
        with pytest.raises(DomainError):
            oracle.solve_dalgarno(-0.1, RadialKind.F_TILDE)


class TestClosedForm:

    @pytest.mark.parametrize("which", list(RadialKind))
    def test_matches_ode(self, oracle, which):
        """Closed-form radial functions agree with the ODE solution on grid points"""
        omega = 0.2
        solution = oracle.solve_dalgarno(omega, which)
        radii = np.array([0.5, 1.0, 2.0, 4.0])
        index = np.rint(radii / (solution.grid[1] - solution.grid[0])).astype(int)
        closed = oracle.radial_closed_form(omega, which, radii)
        assert np.allclose(closed.values, solution.values[index], rtol=1e-7, atol=1e-10)

    @pytest.mark.parametrize("which", list(RadialKind))
    @pytest.mark.parametrize("r", [0.3, 1.3, 5.0])
    def test_residual(self, oracle, which, r):
        """The closed forms solve their radial equations"""
        assert abs(oracle.closed_form_residual(0.2, which, r)) < 1e-8

    def test_residual_above_threshold(self, oracle):
        """The continued closed form still solves the plain-sector equation above threshold"""
        assert abs(oracle.closed_form_residual(1.0, RadialKind.U, 1.0)) < 1e-8
