import pytest

from samskit.collection import minisams

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def minisams_ds():
    return minisams()


@pytest.fixture
def report(request):
    """Call with (ok, detail): records one PASS/FAIL line, then asserts ok."""

    def emit(ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {request.node.name}: {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        assert ok, line

    return emit


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
