import re

_CRITERION = re.compile(r"test_acceptance\.py::test_c(\d\d)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    results = {}
    for kind in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(kind, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not m or (kind == "passed" and rep.when != "call"):
                continue
            key = (int(m.group(1)), m.group(2))
            ok = kind == "passed"
            results[key] = results.get(key, True) and ok
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), ok in sorted(results.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num:2d} {name}")
