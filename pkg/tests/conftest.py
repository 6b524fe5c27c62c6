import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)(\[[^\]]*\])?")


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m and (rep.when == "call" or outcome == "error"):
                label = m.group(2).replace("_", " ") + (f" {m.group(3)}" if m.group(3) else "")
                rows.append((int(m.group(1)), label, "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for num, label, verdict in sorted(rows):
            terminalreporter.write_line(f"criterion {num}: {verdict}  {label}")
