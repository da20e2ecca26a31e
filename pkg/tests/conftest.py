import pytest

from . import acceptance_log


def pytest_runtest_makereport(item, call):
    crit = item.get_closest_marker("criterion")
    if crit is None or call.when != "call":
        return
    number, title = crit.args
    acceptance_log.record(number, title, call.excinfo is None, acceptance_log.pop_detail(number))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_log.lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
