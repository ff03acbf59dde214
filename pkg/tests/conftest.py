import pytest

from a2flats.valfield import field_from_spec


@pytest.fixture(scope="session")
def qt():
    return field_from_spec("qt")


@pytest.fixture(scope="session")
def qp5():
    return field_from_spec("qp:5")


@pytest.fixture(scope="session", params=["qt", "qp:5", "qp:2"])
def field(request):
    return field_from_spec(request.param)


ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


@pytest.fixture
def criterion(request):
    """``criterion(n, title, failures)`` prints and records one PASS/FAIL line, then asserts."""
    lines = request.config.stash[ACCEPTANCE]

    def record(n, title, failures):
        status = "FAIL" if failures else "PASS"
        line = f"{status} criterion {n}: {title}"
        if failures:
            line += f" [{len(failures)} failure(s); first: {failures[0]}]"
        lines[n] = line
        print(line)
        assert not failures, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines, key=str):
            terminalreporter.write_line(lines[n])
