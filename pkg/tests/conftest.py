import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::test_criterion_")[1]
    num = name.split("_")[0]
    if report.when == "call" or report.failed:
        prev = _ACCEPTANCE.get(num)
        verdict = "PASS" if report.passed else "FAIL"
        if prev != "FAIL":
            _ACCEPTANCE[num] = verdict if report.when == "call" or verdict == "FAIL" else prev


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE, key=int):
        terminalreporter.write_line(f"criterion {num}: {_ACCEPTANCE[num]}")
