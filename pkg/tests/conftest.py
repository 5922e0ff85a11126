import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion; the outcome is printed at the end."""
    entry = {"name": None, "detail": ""}

    def set_name(name, detail=""):
        entry["name"] = name
        entry["detail"] = detail

    yield set_name
    rep = getattr(request.node, "rep_call", None)
    if entry["name"] is not None:
        _ACCEPTANCE.append((entry["name"], rep is not None and rep.passed, entry["detail"]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
