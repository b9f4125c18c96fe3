from pathlib import Path

import pytest

from parityrev import TruthTable

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance_lines = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, summarized at the end")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        status = "PASS" if report.passed else "FAIL"
        _acceptance_lines.append(f"[{status}] {marker.args[0]}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def half_adder():
    return TruthTable.from_rows(["00", "10", "10", "01"], name="half_adder")


@pytest.fixture
def full_adder():
    return TruthTable.from_rows(["00", "10", "10", "01", "10", "01", "01", "11"],
                                name="full_adder")


@pytest.fixture
def fredkin():
    def cswap(i):
        c, a, b = (i >> 2) & 1, (i >> 1) & 1, i & 1
        if c:
            a, b = b, a
        return (c << 2) | (a << 1) | b
    return TruthTable.from_function(3, 3, cswap, name="fredkin")


@pytest.fixture
def cnot():
    return TruthTable.from_rows(["00", "01", "11", "10"], name="cnot")


@pytest.fixture
def identity2():
    return TruthTable(2, 2, range(4))


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name
