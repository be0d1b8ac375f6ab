import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from judgagg.io import load_input

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


def fixture_path(name):
    return str(FIXTURES / name)


def load(name):
    return load_input(fixture_path(name))[1]


@pytest.fixture(scope="session")
def pdp():
    return load("pdp.json")


@pytest.fixture(scope="session")
def p17():
    return load("p17.json")


@pytest.fixture(scope="session")
def p15():
    return load("p15.json")


@pytest.fixture(scope="session")
def table9():
    return load("table9.json")


@pytest.fixture(scope="session")
def party():
    return load("party-goers.json")


@pytest.fixture(scope="session")
def v1():
    return load("v1.json")


@pytest.fixture(scope="session")
def v2():
    return load("v2.json")


# acceptance criteria record one line each; printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
