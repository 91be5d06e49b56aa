import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_") or report.when not in ("setup", "call"):
        return
    if report.when == "setup" and report.passed:
        return
    num = name.split("_")[2]
    _criteria[num] = (name, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        name, verdict = _criteria[num]
        terminalreporter.write_line(f"criterion {int(num):>2}: {verdict}  {name}")
