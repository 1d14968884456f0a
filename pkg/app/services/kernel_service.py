"""
Branch-resolved lambda parameters and the Laplace-transform kernels K, K~

Complex powers are exp(w * Log z) with the principal logarithm, arg in (-pi, pi].
"""

import logging
import math
from typing import Optional

import numpy as np

from app.core.errors import DomainError, ThresholdProximity
from app.core.models import BranchedLambda, KernelParams, Regime
from app.services.base_service import BaseService

logger = logging.getLogger(__name__)


def _power_term(base: complex, exponent: complex) -> Optional[complex]:
    """exponent * Log(base); None encodes an exact zero factor"""
    if base == 0:
        if exponent.real > 0:
            return None
        if exponent == 0:
            return 0j
        raise DomainError(
            "kernel evaluated on a branch point with a non-positive exponent",
            exponent=str(exponent),
        )
    return exponent * np.log(complex(base))


class KernelService(BaseService):
    """Evaluates lambda, lambda~ and the kernels K, K~"""

    def lambda_pair(self, omega: float) -> BranchedLambda:
        """
        lambda = sqrt(1 - 2 omega), lambda~ = sqrt(1 + 2 omega)

        Above threshold lambda = +i sqrt(2 omega - 1).

        Args:
            omega: Photon frequency in Hartree

        Returns:
            BranchedLambda with the regime flag set
        """
        omega = self.validate_frequency(omega)
        if abs(omega - 0.5) < self.settings.threshold_guard:
            raise ThresholdProximity(omega, self.settings.threshold_guard)

        lam_tilde = math.sqrt(1.0 + 2.0 * omega)
        if omega < 0.5:
            return BranchedLambda(
                omega=omega,
                lam=complex(math.sqrt(1.0 - 2.0 * omega), 0.0),
                lam_tilde=lam_tilde,
                regime=Regime.BELOW_THRESHOLD,
            )
        return BranchedLambda(
            omega=omega,
            lam=complex(0.0, math.sqrt(2.0 * omega - 1.0)),
            lam_tilde=lam_tilde,
            regime=Regime.ABOVE_THRESHOLD,
        )

    @staticmethod
    def log_prefactor(lam: complex) -> complex:
        """Log of ((1 - lambda)/(1 + lambda))^(1/lambda)"""
        lam = complex(lam)
        return np.log((1.0 - lam) / (1.0 + lam)) / lam

    def kernel_k(self, params: KernelParams, lam: complex, s: complex) -> complex:
        """
        K(p,q,lambda,s) = ((1-l)/(1+l))^(1/l) (s+l)^(p+1/l) (s-l)^(q-1/l)

        Args:
            params: Integer exponents p, q
            lam: lambda (complex)
            s: Point in the complex s-plane

        Returns:
            Kernel value
        """
        lam, s = complex(lam), complex(s)
        inv = 1.0 / lam
        terms = [
            self.log_prefactor(lam),
            _power_term(s + lam, params.p + inv),
            _power_term(s - lam, params.q - inv),
        ]
        if any(t is None for t in terms):
            return 0j
        return complex(np.exp(sum(terms)))

    def kernel_k_tilde(self, params: KernelParams, lam_tilde: float, s: float) -> float:
        """
        K~(p,q,l~,s) = ((l~-1)/(l~+1))^(1/l~) (l~+s)^(p+1/l~) (l~-s)^(q-1/l~)

        Args:
            params: Integer exponents p, q
            lam_tilde: lambda~ (> 1)
            s: Real point in [1, lambda~]

        Returns:
            Real kernel value
        """
        lam_tilde, s = float(lam_tilde), float(s)
        if lam_tilde <= 1.0:
            raise DomainError("lambda~ must exceed 1", lam_tilde=lam_tilde)
        if s > lam_tilde or s <= -lam_tilde:
            raise DomainError("K~ is real only for |s| <= lambda~", s=s, lam_tilde=lam_tilde)

        inv = 1.0 / lam_tilde
        beta = params.q - inv
        if s == lam_tilde:
            if beta > 0:
                return 0.0
            if beta < 0:
                raise DomainError("K~ diverges at s = lambda~ for q < 1/lambda~", q=params.q)

        log_value = inv * math.log((lam_tilde - 1.0) / (lam_tilde + 1.0))
        log_value += (params.p + inv) * math.log(lam_tilde + s)
        if beta != 0:
            log_value += beta * math.log(lam_tilde - s)
        return math.exp(log_value)

    @staticmethod
    def kernel_at_one(p: int, q: int, lam: complex, gap: complex) -> complex:
        """
        K(p,q,lambda,1) = (1+lambda)^p (1-lambda)^q

        Exact for Re(lambda) >= 0, where the principal logs combine without wrapping.

        Args:
            p, q: Integer exponents
            lam: lambda
            gap: 1 - lambda, computed stably by the caller

        Returns:
            Kernel value at s = 1
        """
        return complex((1.0 + lam) ** p * gap ** q)


kernel_service = KernelService()
