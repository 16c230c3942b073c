import pytest

ACCEPTANCE = {}


@pytest.fixture
def record_criterion(request):
    """Call with (number, description); the outcome is filled in after the test."""
    def record(number, description):
        ACCEPTANCE[request.node.nodeid] = [number, description, None]
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    entry = ACCEPTANCE.get(item.nodeid)
    if entry is not None and report.when == "call":
        entry[2] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, status in sorted(ACCEPTANCE.values()):
        terminalreporter.write_line(f"criterion {number}: {status or 'FAIL'} {description}")
