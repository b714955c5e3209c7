import pytest

_ACCEPTANCE: list[tuple[str, bool]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; its pass/fail line is printed in the summary."""
    name = request.node.get_closest_marker("criterion").args[0]
    yield
    report = getattr(request.node, "rep_call", None)
    _ACCEPTANCE.append((name, bool(report and report.passed)))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}")
