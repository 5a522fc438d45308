import pytest


@pytest.fixture
def report(record_property):
    """Attach a measured value to the acceptance summary."""
    return lambda text: record_property("report", text)

_ac_results: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    ac = report.user_properties and dict(report.user_properties).get("acceptance")
    if not ac:
        return
    ident, title = ac
    entry = _ac_results.setdefault(ident, {"title": title, "failed": [], "count": 0, "notes": []})
    entry["count"] += 1
    entry["notes"].extend(v for k, v in report.user_properties if k == "report")
    if report.failed:
        entry["failed"].append(report.nodeid.split("::")[-1])


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            item.user_properties.append(("acceptance", (mark.args[0], mark.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _ac_results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for ident in sorted(_ac_results, key=lambda s: int(s[2:])):
        e = _ac_results[ident]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"{ident:<5} {status}  {e['title']} ({e['count'] - len(e['failed'])}/{e['count']} checks)"
        if e["failed"]:
            line += "  failing: " + ", ".join(e["failed"])
        tr.write_line(line)
        for note in e["notes"]:
            tr.write_line(f"        {note}")
