import pytest

_VERDICTS: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.fixture
def verdict(request, capsys):
    """Collects violations for one acceptance criterion and reports a
    single PASS/FAIL line for it."""
    number = request.node.get_closest_marker("criterion").args[0]
    problems: list[str] = []
    yield problems
    if problems:
        line = f"criterion {number:>2}: FAIL ({len(problems)} violation(s); first: {problems[0]})"
    else:
        line = f"criterion {number:>2}: PASS"
    _VERDICTS[number] = line
    with capsys.disabled():
        print("\n" + line)


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        terminalreporter.write_line(_VERDICTS[number])
