import os

import pytest
from hypothesis import settings

from expolab.bundled import load_program
from expolab.nt.tau import tau_table

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))


@pytest.fixture(scope="session")
def in1():
    return load_program("in1_maass")


@pytest.fixture(scope="session")
def in2():
    return load_program("in2_holomorphic")


@pytest.fixture(scope="session")
def in3():
    return load_program("in3_ngeqm")


@pytest.fixture(scope="session")
def table():
    return tau_table(4096)


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig):
    pytestconfig.acceptance_lines = []
    return pytestconfig.acceptance_lines


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
