import random
from collections import defaultdict

import pytest

from teslerforge.core import TildeUpperTri, UpperTri

_criteria = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number = getattr(report, "criterion", None)
    if number is not None:
        _criteria[number].append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status = "PASS" if all(_criteria[number]) else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}")


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def tesx_v():
    return UpperTri.from_rows([[0, 2, 0, 0], [0, 0, 4], [3, 0], [8]])


@pytest.fixture
def tesx_w():
    return UpperTri.from_rows([[0, 0, 2, 0], [0, 0, 2], [5, 0], [6]])


@pytest.fixture
def cone_example():
    """Hook vector and offset from the worked deformation example."""
    return (8, 7, 8, 1), TildeUpperTri.from_rows([[-1, 2, -3, -4], [-5, 6, 7], [-8, 9]])
