#!/usr/bin/env python3
"""
Script to regenerate the reference tables side by side with the embedded values
"""
import argparse
import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from app.core.models import TableId
from app.data.reference_tables import get_table
from app.services.verification_service import ToleranceMode, verification_service


def _fmt(value, decimals):
    return "--" if value is None else f"{value:.{decimals}f}"


def reproduce(table_id: TableId) -> bool:
    """Print one table and return True when every row matches"""
    table = get_table(table_id)
    print(f"=== {table_id.value}: {table.caption} ===")
    report = verification_service.verify_table(table_id, ToleranceMode.PRINTED)

    print(f"{'omega':>8} {'qty':>7} {'printed':>12} {'computed':>14} {'comparison':>12}")
    for check in report.checks:
        row = check.row
        if row.skipped:
            print(f"{row.omega:>8g} {row.quantity:>7} {row.printed:>12} {'(duplicate)':>14}")
            continue
        mark = "✅" if check.passed else "❌"
        if row.erratum is not None:
            mark += f" (misprint, recomputed {row.erratum})"
        computed = _fmt(check.computed, row.decimals) if check.error is None else check.error
        print(f"{row.omega:>8g} {row.quantity:>7} {row.printed:>12} {computed:>14} {row.comparison or '--':>12} {mark}")

    if report.passed:
        print(f"✅ {table_id.value}: all rows match at printed precision\n")
    else:
        print(f"❌ {table_id.value}: {len(report.failures)} rows differ\n")
    return report.passed


def main():
    parser = argparse.ArgumentParser(description="Regenerate the embedded reference tables")
    parser.add_argument("tables", nargs="*", choices=[t.value for t in TableId], help="Tables to rebuild (default: all)")
    args = parser.parse_args()

    tables = [TableId(t) for t in args.tables] or list(TableId)
    ok = all([reproduce(t) for t in tables])
    if not ok:
        print("⚠️  Some rows differ; rerun with `python -m app.main -v verify` for details")
        sys.exit(1)
    print("🎉 All tables reproduced")


if __name__ == "__main__":
    main()
