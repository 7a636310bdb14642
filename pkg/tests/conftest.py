import itertools

import pytest

from tests import acceptance_log


def multi_indices(max_n: int, max_degree: int):
    """Every multi-index with 1 <= n <= max_n and total degree <= max_degree."""
    for n in range(1, max_n + 1):
        for a in itertools.product(range(max_degree + 1), repeat=n):
            if sum(a) <= max_degree:
                yield a


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {name}: {detail}")


@pytest.fixture
def half_corr():
    from gaussmoments import make_gaussian_spec

    return make_gaussian_spec(["0", "0"], [["1", "1/2"], ["1/2", "1"]])
