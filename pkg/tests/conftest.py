import time

import pytest

_ACCEPTANCE: list[tuple[str, bool, float, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(label)`` then fill ``detail``."""
    box = {"label": request.node.name, "detail": ""}
    start = time.perf_counter()

    def set_(label, detail=""):
        box["label"], box["detail"] = label, detail

    yield box
    elapsed = time.perf_counter() - start
    rep = getattr(request.node, "rep_call", None)
    passed = rep is not None and rep.passed
    _ACCEPTANCE.append((box["label"], passed, elapsed, box["detail"]))


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, elapsed, detail in _ACCEPTANCE:
        status = "PASS" if passed else "FAIL"
        extra = f"  {detail}" if detail else ""
        terminalreporter.write_line(f"{status}  {label}  ({elapsed:.2f} s){extra}")
