import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from primelab import build_omega_table, build_sieve  # noqa: E402

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def small_sieve():
    return build_sieve(10**4)


@pytest.fixture(scope="session")
def sieve_1e6():
    return build_sieve(10**6)


@pytest.fixture(scope="session")
def sieve_1e7():
    return build_sieve(10**7)


@pytest.fixture(scope="session")
def omega_1e7(sieve_1e7):
    return build_omega_table(10**7, sieve=sieve_1e7)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
