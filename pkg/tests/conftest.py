import numpy as np
import pytest

import acceptance_log
from quadhull import codes
from quadhull.ff import FieldTower


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in acceptance_log.RESULTS:
        terminalreporter.write_line(f"{cid:<4} {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def f9():
    return FieldTower.default(3, 2)


@pytest.fixture(scope="session")
def f49():
    return FieldTower.default(7, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def inst74():
    return codes.keygen(7, 2, 4, 35, seed=11)
