"""
Recompute the embedded reference tables and compare row by row
"""

import logging
from enum import Enum
from typing import Dict, List, Optional

from app.core.config import NumericsSettings
from app.core.models import (Observable, ReferenceRow, RowCheck, ScanRecord,
                             TableId, VerificationReport)
from app.data.reference_tables import get_table
from app.services.base_service import BaseService
from app.services.scan_service import ScanService, scan_service
from app.utils import last_digit_unit

logger = logging.getLogger(__name__)


class ToleranceMode(str, Enum):
    PRINTED = "printed"    # 1.5 units in the last printed digit
    STRICT = "strict"      # 0.5 units in the last printed digit
    RELATIVE = "relative"  # |delta| <= tol * max(1, |printed|)


_DIGIT_UNITS = {ToleranceMode.PRINTED: 1.5, ToleranceMode.STRICT: 0.5}

_TABLE_OBSERVABLES = {
    TableId.TABLE1: (Observable.TAU2,),
    TableId.TABLE2: (Observable.KH,),
    TableId.TABLE3: (Observable.KH,),
}


class VerificationService(BaseService):
    """Checks recomputed tau2 and M against the printed tables"""

    def __init__(self, settings: Optional[NumericsSettings] = None, scanner: Optional[ScanService] = None):
        super().__init__(settings)
        self.scanner = scanner or (ScanService(settings) if settings else scan_service)

    @staticmethod
    def tolerance_for(row: ReferenceRow, mode: ToleranceMode, tol: Optional[float] = None) -> float:
        """Absolute tolerance for one row"""
        if mode == ToleranceMode.RELATIVE:
            if tol is None or tol <= 0:
                raise ValueError("relative mode needs a positive tol")
            return tol * max(1.0, abs(row.expected))
        return _DIGIT_UNITS[mode] * last_digit_unit(row.printed)

    @staticmethod
    def _check_row(row: ReferenceRow, record: ScanRecord, tolerance: float) -> RowCheck:
        """Compare one row with the record computed at its omega"""
        if row.skipped:
            return RowCheck(row=row, tolerance=tolerance, passed=True)

        computed = getattr(record, row.quantity)
        if computed is None:
            return RowCheck(row=row, tolerance=tolerance, passed=False, error=record.error or "not computed")

        delta = computed - row.expected
        return RowCheck(row=row, computed=computed, delta=delta, tolerance=tolerance, passed=abs(delta) <= tolerance)

    def verify_table(
        self,
        table_id: TableId,
        mode: ToleranceMode = ToleranceMode.PRINTED,
        tol: Optional[float] = None,
    ) -> VerificationReport:
        """
        Recompute every row of an embedded table

        Args:
            table_id: Which table
            mode: How the per-row tolerance is derived
            tol: Relative tolerance for ToleranceMode.RELATIVE

        Returns:
            VerificationReport with one RowCheck per row, duplicates marked passed and skipped;
            rows carrying an erratum are compared with it instead of the printed value
        """
        table = get_table(table_id)
        omegas: List[float] = sorted({row.omega for row in table.rows})
        records = self.scanner.scan(omegas, observables=_TABLE_OBSERVABLES[table_id])
        by_omega: Dict[float, ScanRecord] = {record.omega: record for record in records}

        checks = [
            self._check_row(row, by_omega[row.omega], self.tolerance_for(row, mode, tol))
            for row in table.rows
        ]
        report = VerificationReport(table=table_id, checks=checks)
        logger.info("%s: %d rows, %d failing", table_id.value, len(checks), len(report.failures))
        return report


verification_service = VerificationService()
