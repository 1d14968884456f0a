"""
Base service class shared by the calculators
Holds the numerics settings and the validation every entry point needs
"""

import logging
from typing import Optional, Tuple

import numpy as np
from pydantic import ValidationError

from app.core.config import NumericsSettings, default_settings
from app.core.errors import DomainError
from app.core.models import PhotonFrequency

logger = logging.getLogger(__name__)

# QUADPACK refuses epsrel below 50 * machine epsilon
_MIN_EPSREL = 50.0 * np.finfo(float).eps


class BaseService:
    """Base service class with settings and common checks"""

    def __init__(self, settings: Optional[NumericsSettings] = None):
        self.settings = settings or default_settings

    def validate_frequency(self, omega: float) -> float:
        """
        Check that omega is a usable photon frequency

        Args:
            omega: Photon frequency in Hartree

        Returns:
            omega as float
        """
        omega = float(omega)
        try:
            return PhotonFrequency(omega=omega).omega
        except ValidationError as e:
            raise DomainError(f"omega must be positive and finite, got {omega!r}", omega=omega) from e

    def tolerances_for(self, omega: float) -> Tuple[float, float]:
        """
        Quadrature tolerances for a frequency

        Args:
            omega: Photon frequency in Hartree

        Returns:
            (epsabs, epsrel) with epsrel clamped to what QUADPACK accepts
        """
        epsabs = self.settings.epsabs
        epsrel = self.settings.epsrel
        if abs(omega) < self.settings.small_omega:
            # the observables lose digits to the I~ - I cancellation here
            epsrel = min(epsrel, self.settings.small_omega_epsrel)
            epsabs = min(epsabs, self.settings.small_omega_epsrel)
        return epsabs, max(epsrel, _MIN_EPSREL)
