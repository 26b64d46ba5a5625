import matplotlib

matplotlib.use("Agg")

_acceptance: dict[str, tuple[str, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.nodeid.split("::")[0].endswith("test_acceptance.py"):
            doc = (item.function.__doc__ or "").strip().splitlines()
            item.user_properties.append(("criterion", doc[0] if doc else item.name))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or report.failed:
        _acceptance[report.nodeid] = ("PASS" if report.passed else "FAIL", props["criterion"])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, text in _acceptance.values():
        terminalreporter.write_line(f"{outcome}  {text}")
