import pytest

ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    label = item.get_closest_marker("criterion")
    if label is None:
        return
    key = label.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        ok = rep.passed
        prev = ACCEPTANCE.get(key, (True, label.args[1]))
        ACCEPTANCE[key] = (prev[0] and ok, label.args[1])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        ok, title = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {title}")
