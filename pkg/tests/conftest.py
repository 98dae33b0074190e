"""Print the acceptance verdicts at the end of every pytest run."""

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for name, value in report.user_properties:
        if name == "acceptance":
            number, ok, detail = value
            _ACCEPTANCE[number] = (ok and report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
    passed = sum(ok for ok, _ in _ACCEPTANCE.values())
    terminalreporter.write_line(f"{passed}/{len(_ACCEPTANCE)} criteria pass")
