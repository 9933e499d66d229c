"""One test per acceptance criterion, at the documented tolerances.

Each test prints a PASS/FAIL line; the lines are repeated in the terminal
summary under "acceptance criteria".
"""

import pytest

from expolab.reproduce import _Programs, run_criterion

CRITERIA = [
    (1, "optimizer"),
    (2, "witnesses"),
    (3, "exponents"),
    (4, "mutation"),
    (5, "poisson"),
    (6, "oracle"),
    (7, "number_theory"),
    (8, "wilton"),
]


@pytest.fixture(scope="module")
def programs():
    return _Programs()


@pytest.mark.parametrize("number, key", CRITERIA, ids=[f"{n}-{k}" for n, k in CRITERIA])
def test_criterion(number, key, programs, acceptance_log):
    res = run_criterion(key, programs)
    line = f"[{'PASS' if res.passed else 'FAIL'}] {number}. {res.title} ({res.seconds:.1f}s): {res.detail}"
    print(line)
    acceptance_log.append(line)
    assert res.passed, line
