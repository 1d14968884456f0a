from pathlib import Path
from typing import Optional

from decouple import Config, RepositoryEnv, config
from pydantic import BaseModel, ConfigDict, Field

# ==================================================================================
# GUARD BANDS
# ==================================================================================

# |omega - 1/2| below this is rejected (1/lambda diverges at threshold)
THRESHOLD_GUARD = config("THRESHOLD_GUARD", default=1e-6, cast=float)
# |q + 1 - 1/lambda| below this is an exact intermediate resonance
POLE_GUARD = config("POLE_GUARD", default=1e-10, cast=float)
# smallest recurrence denominator below this flags near_resonance
RESONANCE_WARN_BAND = config("RESONANCE_WARN_BAND", default=1e-4, cast=float)
# recurrence continues until Re(q - 1/lambda) > CONTINUATION_MARGIN
CONTINUATION_MARGIN = config("CONTINUATION_MARGIN", default=0.0, cast=float)
# continuations this deep are repeated one level deeper and must agree to DEPTH_CHECK_RTOL
DEPTH_CHECK = config("DEPTH_CHECK", default=32, cast=int)
DEPTH_CHECK_RTOL = config("DEPTH_CHECK_RTOL", default=1e-6, cast=float)

# ==================================================================================
# QUADRATURE
# ==================================================================================

QUAD_EPSABS = config("QUAD_EPSABS", default=1e-12, cast=float)
QUAD_EPSREL = config("QUAD_EPSREL", default=1e-12, cast=float)
QUAD_LIMIT = config("QUAD_LIMIT", default=200, cast=int)
# above threshold with |lambda| below this the path climbs vertically out of s = lambda
VERTICAL_KAPPA = config("VERTICAL_KAPPA", default=0.1, cast=float)

# Below SMALL_OMEGA the observables lose digits to the I~ - I cancellation
SMALL_OMEGA = config("SMALL_OMEGA", default=1e-3, cast=float)
SMALL_OMEGA_EPSREL = config("SMALL_OMEGA_EPSREL", default=1e-14, cast=float)

# ==================================================================================
# ODE ORACLE
# ==================================================================================

ORACLE_R_MAX = config("ORACLE_R_MAX", default=60.0, cast=float)
ORACLE_STEP = config("ORACLE_STEP", default=0.005, cast=float)
ORACLE_OMEGA_MAX = config("ORACLE_OMEGA_MAX", default=0.375, cast=float)

# ==================================================================================
# RUNTIME
# ==================================================================================

SCAN_WORKERS = config("SCAN_WORKERS", default=4, cast=int)
LOG_LEVEL = config("LOG_LEVEL", default="WARNING")


class NumericsSettings(BaseModel):
    """Frozen bundle of every tunable numerical knob"""
    model_config = ConfigDict(frozen=True)

    threshold_guard: float = Field(THRESHOLD_GUARD, gt=0, description="Half-width of the rejected band around omega = 1/2")
    pole_guard: float = Field(POLE_GUARD, gt=0, description="Recurrence denominator treated as an exact pole")
    resonance_warn_band: float = Field(RESONANCE_WARN_BAND, gt=0, description="Denominator below which near_resonance is set")
    continuation_margin: float = Field(CONTINUATION_MARGIN, ge=0, description="Required Re(q - 1/lambda) after continuation")
    depth_check: int = Field(DEPTH_CHECK, ge=1, description="Depth from which continuations are cross-checked one level deeper")
    depth_check_rtol: float = Field(DEPTH_CHECK_RTOL, gt=0, description="Allowed relative spread of that cross-check")
    epsabs: float = Field(QUAD_EPSABS, gt=0, description="Absolute quadrature tolerance on normalized integrands")
    epsrel: float = Field(QUAD_EPSREL, gt=0, description="Relative quadrature tolerance")
    limit: int = Field(QUAD_LIMIT, ge=10, description="QUADPACK subinterval limit")
    vertical_kappa: float = Field(VERTICAL_KAPPA, gt=0, description="|lambda| below which the above-threshold path starts vertically")
    small_omega: float = Field(SMALL_OMEGA, gt=0, description="Frequency below which the tight tolerance is used")
    small_omega_epsrel: float = Field(SMALL_OMEGA_EPSREL, gt=0, description="Relative tolerance for tiny omega")
    oracle_r_max: float = Field(ORACLE_R_MAX, gt=0, description="Outer radius of the ODE grid (bohr)")
    oracle_step: float = Field(ORACLE_STEP, gt=0, description="Numerov step on the ODE grid (bohr)")
    oracle_omega_max: float = Field(ORACLE_OMEGA_MAX, gt=0, description="Largest omega the ODE oracle accepts by default")
    scan_workers: int = Field(SCAN_WORKERS, ge=1, description="Thread count for frequency scans")


# key=value file names mapped onto settings fields
_FILE_KEYS = {
    "THRESHOLD_GUARD": ("threshold_guard", float),
    "POLE_GUARD": ("pole_guard", float),
    "RESONANCE_WARN_BAND": ("resonance_warn_band", float),
    "CONTINUATION_MARGIN": ("continuation_margin", float),
    "DEPTH_CHECK": ("depth_check", int),
    "DEPTH_CHECK_RTOL": ("depth_check_rtol", float),
    "QUAD_EPSABS": ("epsabs", float),
    "QUAD_EPSREL": ("epsrel", float),
    "QUAD_LIMIT": ("limit", int),
    "VERTICAL_KAPPA": ("vertical_kappa", float),
    "SMALL_OMEGA": ("small_omega", float),
    "SMALL_OMEGA_EPSREL": ("small_omega_epsrel", float),
    "ORACLE_R_MAX": ("oracle_r_max", float),
    "ORACLE_STEP": ("oracle_step", float),
    "ORACLE_OMEGA_MAX": ("oracle_omega_max", float),
    "SCAN_WORKERS": ("scan_workers", int),
}


def load_settings(config_file: Optional[str | Path] = None, **overrides) -> NumericsSettings:
    """
    Build settings from defaults, an optional key=value file and explicit overrides

    Args:
        config_file: Path to a key=value file; keys use the environment names
        overrides: Field values that win over everything else (None is ignored)

    Returns:
        Frozen NumericsSettings
    """
    values = {}
    if config_file is not None:
        file_config = Config(RepositoryEnv(str(config_file)))
        for key, (field, cast) in _FILE_KEYS.items():
            raw = file_config(key, default=None)
            if raw is not None:
                values[field] = cast(raw)

    values.update({k: v for k, v in overrides.items() if v is not None})
    return NumericsSettings(**values)


default_settings = NumericsSettings()
