import re
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, list[tuple[str, str, str]]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20140123)


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    match = re.match(r"test_c(\d+)_", name)
    if not match or "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        failed = hasattr(report, "wasxfail") or report.outcome != "passed"
        detail = dict(report.user_properties).get("detail", "")
        _criteria.setdefault(match.group(1), []).append((name, "FAIL" if failed else "PASS", detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=int):
        parts = _criteria[key]
        failed = [name for name, outcome, _ in parts if outcome == "FAIL"]
        status = "FAIL" if failed else "PASS"
        detail = f" (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {key:>2}: {status} [{len(parts) - len(failed)}/{len(parts)} checks]{detail}")
        for name, outcome, note in parts:
            if note:
                terminalreporter.write_line(f"    {outcome} {name}: {note}")
