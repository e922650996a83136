import os

import pytest
from hypothesis import HealthCheck, settings

# First calls into the compiled kernels pay the JIT cost; no per-example deadline.
settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or (rep.when != "call" and rep.passed):
        return
    num, title = m.args
    entry = _criteria.setdefault(num, {"title": title, "ok": True, "detail": []})
    if not rep.passed:
        entry["ok"] = False
        entry["detail"].append(item.name)
    elif rep.when == "call":
        for name, text in item.user_properties:
            if name == "summary":
                entry["detail"].append(text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        line = f"criterion {num:2d} {'PASS' if e['ok'] else 'FAIL'}  {e['title']}"
        if e["detail"]:
            line += "  [" + "; ".join(e["detail"]) + "]"
        tr.write_line(line)
