import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_criteria = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    crit = props.get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _criteria.get(crit, "PASS")
        ok = report.outcome == "passed"
        _criteria[crit] = prev if ok else "FAIL"
        _criteria.setdefault(crit, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_criteria, key=lambda c: int(c.split()[0])):
        tr.write_line(f"[{_criteria[crit]}] criterion {crit}")
