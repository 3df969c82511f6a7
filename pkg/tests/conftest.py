import numpy as np
import pytest

from pathlift import kernels


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def report():
    """Record one PASS/FAIL line per acceptance criterion and return ``ok``."""
    def _report(number, title, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
        _ACCEPTANCE.append(line)
        print(line)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
