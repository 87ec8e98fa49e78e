"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a time limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title, limit = mark.args
    entry = _RESULTS.setdefault(number, {"title": title, "limit": limit, "ok": True, "time": 0.0, "tests": 0})
    if rep.when == "call":
        entry["time"] += rep.duration
        entry["tests"] += 1
    if rep.failed or rep.skipped:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        e = _RESULTS[number]
        ok = e["ok"] and e["time"] < e["limit"]
        tr.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {e['title']}  "
                      f"({e['time']:.1f}s, limit {e['limit']}s, {e['tests']} test(s))")
