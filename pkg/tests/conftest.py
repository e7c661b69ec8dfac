"""Prints one pass/fail line per acceptance criterion at the end of the run."""

from collections import defaultdict

_outcomes = defaultdict(list)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[crit].append((report.nodeid.split("::")[-1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_outcomes):
        results = _outcomes[crit]
        failed = [name for name, ok in results if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {crit:>2}: {status}  ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            shown = ", ".join(failed[:6]) + (" ..." if len(failed) > 6 else "")
            line += f"  failing: {shown}"
        tr.write_line(line)
