"""
Frequency scans: one ScanRecord per grid point, evaluated on a thread pool
Records come back in grid order whatever the worker count
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Sequence

from app.core.config import NumericsSettings
from app.core.errors import DomainError, ResponseError
from app.core.models import ContinuationReport, Observable, ScanRecord
from app.services.base_service import BaseService
from app.services.observables_service import (ObservablesService,
                                              observables_service)
from app.utils import linear_grid

logger = logging.getLogger(__name__)

# |omega - 1/2| below this marks a record near_threshold
NEAR_THRESHOLD_BAND = 1e-3


class ScanService(BaseService):
    """Evaluates tau2 and M over frequency grids"""

    def __init__(self, settings: Optional[NumericsSettings] = None, observables: Optional[ObservablesService] = None):
        super().__init__(settings)
        self.observables = observables or (ObservablesService(settings) if settings else observables_service)

    def in_resonance_band(self, omega: float) -> bool:
        """True when |n - 1/lambda| is inside the pole guard for the nearest omega_n"""
        if not 0.0 < omega < 0.5:
            return False
        n, _ = self.observables.continuation.nearest_resonance(omega, self.settings.threshold_guard)
        return abs(n - 1.0 / math.sqrt(1.0 - 2.0 * omega)) < self.settings.pole_guard

    def evaluate(
        self,
        omega: float,
        observables: Sequence[Observable] = (Observable.TAU2, Observable.KH),
        strict: bool = False,
    ) -> ScanRecord:
        """
        Evaluate one grid point; failures are stored in the record

        Args:
            omega: Photon frequency in Hartree
            observables: Which responses to compute
            strict: Re-raise failures instead of recording them

        Returns:
            ScanRecord
        """
        record = ScanRecord(omega=omega, near_threshold=abs(omega - 0.5) < NEAR_THRESHOLD_BAND)
        report = ContinuationReport()
        try:
            if Observable.TAU2 in observables:
                tau = self.observables.tau2(omega)
                record.tau_re, record.tau_im = tau.value.real, tau.value.imag
                report = report.merge(tau.report)
            if Observable.KH in observables:
                m = self.observables.kh_matrix(omega)
                record.m_re, record.m_im = m.value.real, m.value.imag
                record.m_abs2 = m.value.real ** 2 + m.value.imag ** 2
                report = report.merge(m.report)
        except ResponseError as e:
            if strict:
                raise
            logger.warning("scan point omega=%.12g failed: %s", omega, e.message)
            record.error = f"{type(e).__name__}: {e.message}"
        record.near_resonance = report.near_resonance
        record.continuation_depth = report.depth
        if record.error is not None and not record.near_resonance:
            record.near_resonance = self.in_resonance_band(omega)
        return record

    def scan(
        self,
        omegas: Iterable[float],
        observables: Sequence[Observable] = (Observable.TAU2, Observable.KH),
        skip_resonances: bool = False,
        workers: Optional[int] = None,
    ) -> List[ScanRecord]:
        """
        Evaluate a list of frequencies

        Args:
            omegas: Frequencies in Hartree, emitted in the given order
            observables: Which responses to compute
            skip_resonances: Drop points inside the pole guard of a resonance
            workers: Thread count (defaults to settings)

        Returns:
            Records in input order
        """
        points = [float(w) for w in omegas]
        if skip_resonances:
            points = [w for w in points if not self.in_resonance_band(w)]

        workers = workers or self.settings.scan_workers
        if workers <= 1 or len(points) <= 1:
            return [self.evaluate(w, observables) for w in points]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda w: self.evaluate(w, observables), points))

    def scan_range(
        self,
        omega_start: float,
        omega_end: float,
        steps: int,
        observables: Sequence[Observable] = (Observable.TAU2, Observable.KH),
        skip_resonances: bool = False,
        workers: Optional[int] = None,
    ) -> List[ScanRecord]:
        """
        Evaluate an evenly spaced grid, endpoints included

        Args:
            omega_start: First frequency (> 0)
            omega_end: Last frequency (> omega_start)
            steps: Number of grid points (>= 2)

        Returns:
            Records in ascending omega
        """
        if not 0.0 < omega_start < omega_end:
            raise DomainError("scan needs 0 < start < end", start=omega_start, end=omega_end)
        if steps < 2:
            raise DomainError("scan needs at least 2 steps", steps=steps)
        return self.scan(linear_grid(omega_start, omega_end, steps), observables, skip_resonances, workers)


scan_service = ScanService()
