import pytest

from covsys import ResidueSystem
from covsys import _kernels

ACCEPTANCE_LINES = []


@pytest.fixture
def fixture_system():
    """erdos_cover(3): {1(2), 2(4), 1(3), 2(6), 0(12)}."""
    return ResidueSystem.parse("1(2), 2(4), 1(3), 2(6), 0(12)")


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    _kernels.warm_up()


@pytest.fixture
def record_criterion(request):
    """Log one pass/fail line for an acceptance criterion."""

    def record(label, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] {label}" + (f": {detail}" if detail else ""))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section(f"acceptance criteria (kernels: {_kernels.BACKEND})")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
