import math
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from app.core.units import Hartree_eV
from app.utils import printed_decimals


class Regime(str, Enum):
    BELOW_THRESHOLD = "below_threshold"
    ABOVE_THRESHOLD = "above_threshold"


class IntegralKind(str, Enum):
    PLAIN = "plain"
    TILDE = "tilde"


class Observable(str, Enum):
    TAU2 = "tau2"
    KH = "kh"
    P = "p"


class RadialKind(str, Enum):
    F = "f"
    F_TILDE = "f_tilde"
    U = "u"
    U_TILDE = "u_tilde"


class TableId(str, Enum):
    TABLE1 = "table1"
    TABLE2 = "table2"
    TABLE3 = "table3"


class Contour(str, Enum):
    STRAIGHT = "straight"
    DETOUR = "detour"
    VERTICAL = "vertical"


# ==================================================================================
# KERNEL PARAMETERS
# ==================================================================================

class PhotonFrequency(BaseModel):
    """Photon energy in Hartree"""
    model_config = ConfigDict(frozen=True)

    omega: float = Field(..., gt=0, description="Photon frequency (atomic units)")

    @field_validator("omega")
    @classmethod
    def finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("omega must be finite")
        return v


class BranchedLambda(BaseModel):
    """lambda = sqrt(1 - 2 omega) and lambda~ = sqrt(1 + 2 omega) on the chosen branch"""
    model_config = ConfigDict(frozen=True)

    omega: float = Field(..., gt=0)
    lam: complex = Field(..., description="lambda; real in (0,1) below threshold, +i|.| above")
    lam_tilde: float = Field(..., gt=1, description="lambda~, always real and > 1")
    regime: Regime

    @property
    def inv_lam(self) -> complex:
        return 1.0 / self.lam

    @property
    def gap(self) -> complex:
        """1 - lambda without cancellation"""
        return 2.0 * self.omega / (1.0 + self.lam)

    @property
    def gap_tilde(self) -> float:
        """lambda~ - 1 without cancellation"""
        return 2.0 * self.omega / (self.lam_tilde + 1.0)

    @property
    def is_above(self) -> bool:
        return self.regime == Regime.ABOVE_THRESHOLD


class KernelParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    q: int


class IntegralSpec(BaseModel):
    """Identifies one reduced integral I(p,q,lambda,n) or I~(p,q,lambda~,n)"""
    model_config = ConfigDict(frozen=True)

    p: int
    q: int
    n: int = Field(..., ge=0, description="Radial power in the e^{-2r} r^n weight")
    kind: IntegralKind = IntegralKind.PLAIN

    @property
    def params(self) -> KernelParams:
        return KernelParams(p=self.p, q=self.q)


class ContinuationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    depth: int = Field(0, ge=0, description="Recurrence applications")
    min_denominator: float = Field(math.inf, description="Smallest |q+1-1/lambda| met")
    near_resonance: bool = False

    def merge(self, other: "ContinuationReport") -> "ContinuationReport":
        """Combine reports of integrals feeding one observable"""
        return ContinuationReport(
            depth=max(self.depth, other.depth),
            min_denominator=min(self.min_denominator, other.min_denominator),
            near_resonance=self.near_resonance or other.near_resonance,
        )


# ==================================================================================
# OBSERVABLES
# ==================================================================================

class ComplexResponse(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: complex
    observable: Observable
    omega: float = Field(..., description="Signed for P(-omega), positive otherwise")
    report: ContinuationReport = Field(default_factory=ContinuationReport)


class StarkShift(BaseModel):
    """Delta = dE - i Gamma = -(I/I0) tau2"""
    model_config = ConfigDict(frozen=True)

    omega: float
    intensity: float = Field(..., ge=0, description="Laser intensity (W/cm^2)")
    delta_e: float = Field(..., description="Level shift (Hartree)")
    gamma: float = Field(..., description="Level width (Hartree)")
    report: ContinuationReport = Field(default_factory=ContinuationReport)

    @computed_field
    @property
    def delta_e_ev(self) -> float:
        return self.delta_e * Hartree_eV

    @computed_field
    @property
    def gamma_ev(self) -> float:
        return self.gamma * Hartree_eV


class CrossSection(BaseModel):
    """Unpolarized differential cross section in units of r0^2 per steradian"""
    model_config = ConfigDict(frozen=True)

    omega: float
    theta: float = Field(..., ge=0, le=math.pi)
    value: float = Field(..., ge=0)
    msquared: float = Field(..., ge=0)


class ScanRecord(BaseModel):
    omega: float
    tau_re: Optional[float] = None
    tau_im: Optional[float] = None
    m_re: Optional[float] = None
    m_im: Optional[float] = None
    m_abs2: Optional[float] = None
    near_resonance: bool = False
    continuation_depth: int = 0
    near_threshold: bool = False
    error: Optional[str] = None


# ==================================================================================
# REFERENCE DATA
# ==================================================================================

class ReferenceRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    omega: float
    quantity: str = Field(..., description="ScanRecord field the row checks (tau_re, m_im, ...)")
    printed: str = Field(..., description="Value exactly as printed")
    comparison: Optional[str] = Field(None, description="Independent literature value, if printed")
    skipped: bool = Field(False, description="Duplicate rows are kept but not checked")
    erratum: Optional[str] = Field(None, description="Recomputed value checked in place of a misprinted one")

    @property
    def value(self) -> float:
        return float(self.printed)

    @property
    def decimals(self) -> int:
        return printed_decimals(self.printed)

    @property
    def expected(self) -> float:
        """Value the row is checked against"""
        return float(self.erratum) if self.erratum is not None else self.value


class ReferenceTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: TableId
    caption: str
    rows: List[ReferenceRow]


class RowCheck(BaseModel):
    row: ReferenceRow
    computed: Optional[float] = None
    delta: Optional[float] = None
    tolerance: float
    passed: bool
    error: Optional[str] = None


class VerificationReport(BaseModel):
    table: TableId
    checks: List[RowCheck]

    @property
    def failures(self) -> List[RowCheck]:
        return [c for c in self.checks if not c.passed and not c.row.skipped]

    @property
    def passed(self) -> bool:
        return not self.failures


# ==================================================================================
# RADIAL SOLUTIONS
# ==================================================================================

class RadialSolution(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    omega: float
    which: RadialKind
    grid: np.ndarray = Field(..., description="Ascending radii (bohr)")
    values: np.ndarray = Field(..., description="Complex radial function on the grid")
    residual: float = Field(0.0, description="Scaled ODE residual on interior points")
