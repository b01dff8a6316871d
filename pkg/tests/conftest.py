import pytest

from fanocheck.scen216 import Scenario216, run_all_216
from fanocheck.scen317 import Scenario317, run_all_317


@pytest.fixture(scope="session")
def sc317():
    return Scenario317()


@pytest.fixture(scope="session")
def sc216():
    return Scenario216()


@pytest.fixture(scope="session")
def reports317(sc317):
    return {r.checkId: r for r in run_all_317(sc317)}


@pytest.fixture(scope="session")
def reports216(sc216):
    return {r.checkId: r for r in run_all_216(sc216)}
