import pytest

_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    detail = ""
    if report.failed and call.excinfo is not None:
        detail = str(call.excinfo.value).strip().splitlines()[0][:120]
    _results[number] = (title, report.passed, report.duration, detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, passed, duration, detail = _results[number]
        line = f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title} ({duration:.2f} s)"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)
