import pytest

_RESULTS: dict[int, tuple[str, str, float, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title, limit = marker.args
    _RESULTS[number] = ("PASS" if report.passed else "FAIL", title, report.duration, limit)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title, took, limit = _RESULTS[number]
        terminalreporter.write_line(f"{status} criterion {number:>2}: {title} ({took:.2f} s, limit {limit} s)")
