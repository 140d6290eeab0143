"""Collect acceptance-criterion outcomes and print one line per criterion."""

_outcomes: dict[int, tuple[str, list[str]]] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call" and call.excinfo is None:
        return
    number, title = marker.args
    _, failed = _outcomes.get(number, (title, []))
    if call.excinfo is not None:
        failed.append(item.name)
    _outcomes[number] = (title, failed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        title, failed = _outcomes[number]
        status = "FAIL" if failed else "PASS"
        terminalreporter.write_line(f"criterion {number:2d} {status}: {title}")
