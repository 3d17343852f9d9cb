import time
from contextlib import contextmanager

import pytest

_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def criterion(request):
    """Time a block, enforce its budget and log one PASS/FAIL line for the summary."""
    log = request.config.stash[_RESULTS]

    @contextmanager
    def run(number: int, title: str, budget: float):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            if elapsed >= budget:
                raise AssertionError(f"took {elapsed:.2f}s, budget {budget}s")
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            line = f"[{status}] criterion {number}: {title} ({elapsed:.2f}s / {budget}s)"
            log.append((number, line))
            print(line)

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = sorted(config.stash.get(_RESULTS, []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in lines:
            terminalreporter.write_line(line)
