"""
Tests for settings, base-service checks and small helpers
"""

import math

import pytest
from pydantic import ValidationError

from app.core.config import NumericsSettings, load_settings
from app.core.errors import DomainError, ResonancePole, ThresholdProximity, VerificationFailure
from app.services.base_service import BaseService
from app.utils import format_human, format_machine, last_digit_unit, linear_grid, log_grid, printed_decimals


@pytest.fixture
def clean_env(monkeypatch):
    """Drop numerics keys from the environment so file values are visible"""
    for key in ("POLE_GUARD", "QUAD_LIMIT", "QUAD_EPSREL", "DEPTH_CHECK", "VERTICAL_KAPPA"):
        monkeypatch.delenv(key, raising=False)


class TestLoadSettings:

    def test_defaults(self):
        """No file and no overrides gives the defaults"""
        assert load_settings() == NumericsSettings()

    def test_file_values(self, tmp_path, clean_env):
        """key=value files set fields by their environment names"""
        path = tmp_path / "numerics.env"
        path.write_text("POLE_GUARD=1e-8\nQUAD_LIMIT=300\n")
        settings = load_settings(path)
        assert settings.pole_guard == 1e-8
        assert settings.limit == 300

    def test_overrides_win(self, tmp_path, clean_env):
        """Explicit overrides beat the file"""
        path = tmp_path / "numerics.env"
        path.write_text("POLE_GUARD=1e-8\n")
        assert load_settings(path, pole_guard=1e-9).pole_guard == 1e-9

    def test_none_override_ignored(self):
        """None overrides keep the default"""
        assert load_settings(epsrel=None).epsrel == NumericsSettings().epsrel

    def test_environment_beats_file(self, tmp_path, monkeypatch):
        """The process environment wins over the file for the same key"""
        path = tmp_path / "numerics.env"
        path.write_text("QUAD_LIMIT=300\n")
        monkeypatch.setenv("QUAD_LIMIT", "400")
        assert load_settings(path).limit == 400

    def test_frozen(self):
        """Settings cannot be mutated"""
        with pytest.raises(ValidationError):
            NumericsSettings().limit = 10

    def test_validation(self):
        """Out-of-range values are rejected"""
        with pytest.raises(ValidationError):
            NumericsSettings(limit=5)
        with pytest.raises(ValidationError):
            NumericsSettings(pole_guard=0.0)
        with pytest.raises(ValidationError):
            NumericsSettings(depth_check=0)
        with pytest.raises(ValidationError):
            NumericsSettings(vertical_kappa=0.0)

    def test_continuation_keys_from_file(self, tmp_path, clean_env):
        """Depth cross-check and vertical contour knobs load from the file"""
        path = tmp_path / "numerics.env"
        path.write_text("DEPTH_CHECK=12\nVERTICAL_KAPPA=0.05\n")
        settings = load_settings(path)
        assert settings.depth_check == 12
        assert settings.vertical_kappa == 0.05


class TestBaseService:

    @pytest.mark.parametrize("omega", [0.0, -0.1, math.inf, math.nan])
    def test_bad_frequency(self, omega):
        """Non-positive and non-finite frequencies raise DomainError"""
        with pytest.raises(DomainError):
            BaseService().validate_frequency(omega)

    def test_frequency_cast(self):
        """Integer input comes back as float"""
        assert BaseService().validate_frequency(1) == 1.0

    def test_small_omega_tightens(self):
        """Below small_omega the relative tolerance tightens"""
        service = BaseService(NumericsSettings(epsrel=1e-10, small_omega_epsrel=1e-13))
        assert service.tolerances_for(1e-4)[1] == 1e-13
        assert service.tolerances_for(0.1)[1] == 1e-10

    def test_epsrel_clamped(self):
        """epsrel never drops below what QUADPACK accepts"""
        service = BaseService(NumericsSettings(epsrel=1e-20))
        assert service.tolerances_for(0.1)[1] > 1e-15


class TestErrors:

    def test_detail_shape(self):
        """detail carries status, error type, message and context"""
        error = ThresholdProximity(0.5, 1e-6)
        assert error.detail["status"] == "error"
        assert error.detail["error"] == "ThresholdProximity"
        assert error.detail["omega"] == 0.5
        assert error.exit_code == 2

    def test_resonance_message(self):
        """ResonancePole names omega and n"""
        error = ResonancePole(0.375, 2, 0.375, 0.0)
        assert "n=2" in error.message
        assert "0.375" in error.message

    def test_verification_exit_code(self):
        """Verification failures exit 1"""
        assert VerificationFailure("x").exit_code == 1


class TestFormatting:

    @pytest.mark.parametrize("text,decimals", [("-0.000018", 6), ("1.205", 3), ("10", 0), ("-15.763", 3), ("1.5e-3", 1)])
    def test_printed_decimals(self, text, decimals):
        """Digits after the decimal point"""
        assert printed_decimals(text) == decimals

    def test_last_digit_unit(self):
        """One unit in the last printed digit"""
        assert last_digit_unit("0.0000319") == pytest.approx(1e-7)

    def test_machine_round_trip(self):
        """17 significant digits round-trip exactly"""
        value = 1.0 / 3.0
        assert float(format_machine(value)) == value
        assert format_machine(None) == ""

    def test_human(self):
        """Fixed-point rendering with a placeholder for missing values"""
        assert format_human(1.20598, 4) == "1.2060"
        assert format_human(None) == "--"

    def test_linear_grid_endpoints(self):
        """Linear grids hit both endpoints exactly"""
        grid = list(linear_grid(0.1, 0.7, 4))
        assert grid[0] == 0.1 and grid[-1] == 0.7
        assert len(grid) == 4

    def test_log_grid(self):
        """Log grids are geometric with exact endpoints"""
        grid = list(log_grid(1e-3, 10.0, 5))
        assert grid[0] == 1e-3 and grid[-1] == 10.0
        assert grid[2] == pytest.approx(0.1)
        assert all(math.isclose(grid[k + 1] / grid[k], 10.0) for k in range(4))
