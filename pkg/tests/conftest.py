import re

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}
_NAME = re.compile(r"test_acceptance\.py::test_a(\d+)_(\w+?)(\[|$)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m or (report.when != "call" and report.passed):
        return
    key, label = int(m.group(1)), m.group(2).replace("_", " ")
    ok = _ACCEPTANCE.get(key, (label, True))[1] and report.passed
    _ACCEPTANCE[key] = (label, ok)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        label, ok = _ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {label}")
