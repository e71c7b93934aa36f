import pytest

_criteria: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        key = f"{marker.args[0]}. {marker.args[1]}"
        _criteria.setdefault(key, []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k.split(".")[0])):
        results = _criteria[key]
        ok = all(outcome == "passed" for _, outcome in results)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key} ({len(results)} checks)")
