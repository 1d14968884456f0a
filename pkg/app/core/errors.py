"""
Error types raised by the response calculators
Each error carries a detail dict ({"status": "error", "message": ...}) and the CLI exit code it maps to
"""

from typing import Any, Dict, Optional


class ResponseError(Exception):
    """Base class for every failure the calculators report"""

    exit_code = 2

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    @property
    def detail(self) -> Dict[str, Any]:
        detail = {"status": "error", "error": type(self).__name__, "message": self.message}
        detail.update(self.context)
        return detail


class ThresholdProximity(ResponseError):
    """omega lies inside the guard band around the ionization threshold"""

    def __init__(self, omega: float, guard: float):
        super().__init__(
            f"omega={omega!r} is within {guard:g} of the ionization threshold 0.5",
            omega=omega,
            guard=guard,
        )


class ResonancePole(ResponseError):
    """A recurrence denominator vanished: omega sits on an intermediate resonance"""

    def __init__(self, omega: float, nearest_n: Optional[int], nearest_omega: Optional[float], denominator: float):
        where = f"resonance n={nearest_n} (omega_n={nearest_omega:.12g})" if nearest_n else "an intermediate resonance"
        super().__init__(
            f"omega={omega!r} hits {where}; |q+1-1/lambda|={denominator:.3e}",
            omega=omega,
            nearest_n=nearest_n,
            nearest_omega=nearest_omega,
            denominator=denominator,
        )


class DomainError(ResponseError):
    """Arguments outside the domain of a kernel or integral"""


class QuadratureFailure(ResponseError):
    """Adaptive quadrature could not reach the requested tolerance"""

    def __init__(self, message: str, abserr: float, requested: float):
        super().__init__(message, abserr=abserr, requested=requested)


class NonConvergence(ResponseError):
    """The radial boundary-value solve did not produce an acceptable solution"""


class OracleRangeError(ResponseError):
    """omega is outside the range where the ODE oracle has a unique solution"""


class VerificationFailure(ResponseError):
    """One or more reference rows disagreed with the recomputed values"""

    exit_code = 1
