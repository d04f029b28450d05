import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


def pytest_runtest_logreport(report):
    marker = _acceptance_ids.get(report.nodeid)
    if marker is None:
        return
    if report.when == "call" or report.outcome == "failed":
        prev = _criteria.get(marker)
        _criteria[marker] = "FAIL" if report.failed or prev == "FAIL" else "PASS"


_acceptance_ids = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _acceptance_ids[item.nodeid] = (m.kwargs["id"], m.kwargs["title"])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (cid, title), status in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {cid:2d} {status}  {title}")
