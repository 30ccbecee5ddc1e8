import numpy as np
import pytest

_ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def rng(request):
    # one reproducible stream per test
    seed = sum(map(ord, request.node.name))
    return np.random.default_rng(seed)


@pytest.fixture
def criterion():
    """Record an acceptance result: ``criterion(n, title, passed, detail)``."""
    def record(n, title, passed, detail=""):
        _ACCEPTANCE[n] = (title, bool(passed), detail)
        print(f"criterion {n:2d} {'PASS' if passed else 'FAIL'}: {title} ({detail})")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, passed, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {n:2d}. {title}: {detail}")
