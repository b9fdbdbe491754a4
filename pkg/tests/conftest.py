import pytest

from gallai.construction import default_base
from gallai.geometry import PointSet

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    ok = report.passed if report.when == "call" else not report.failed
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  AC{number:>2}  {title}")


@pytest.fixture(scope="session")
def fig1():
    return default_base(preset="fig1")


@pytest.fixture(scope="session")
def moment():
    return default_base(6)


@pytest.fixture
def fig1_delta_321():
    return PointSet.of((0, 0), (10, 0), (10, 5), (20, 0), (20, 10), (20, 5))
