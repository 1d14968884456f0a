"""
Shared fixtures for the response calculator tests
Run with: pytest app/tests
"""

import mpmath
import pytest

from app.core.config import NumericsSettings
from app.services.continuation_service import ContinuationService
from app.services.kernel_service import KernelService
from app.services.observables_service import ObservablesService
from app.services.oracle_service import OracleService
from app.services.scan_service import ScanService


@pytest.fixture(scope="session")
def settings():
    """Default numerics settings"""
    return NumericsSettings()


@pytest.fixture(scope="session")
def kernels(settings):
    return KernelService(settings)


@pytest.fixture(scope="session")
def continuation(settings):
    return ContinuationService(settings)


@pytest.fixture(scope="session")
def observables(settings):
    return ObservablesService(settings)


@pytest.fixture(scope="session")
def oracle(settings):
    return OracleService(settings)


@pytest.fixture
def scanner(settings):
    return ScanService(settings)


@pytest.fixture(autouse=True)
def mp_precision():
    """30 digits for every mpmath reference value"""
    with mpmath.workdps(30):
        yield
