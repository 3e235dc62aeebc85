import pytest

from geoperm.mining import SubpatternFilter, mine_levels


@pytest.fixture(scope="session")
def mined():
    """{k: (table, minimal class keys)} for sizes 1..4, mined once per session."""
    return {k: (table, minimal) for k, table, minimal in mine_levels(4)}


@pytest.fixture(scope="session")
def filter4(mined):
    return SubpatternFilter(mined[4][0], 4)


# ---------------------------------------------------------------- acceptance report

_criteria: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        props = dict(report.user_properties)
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _criteria.append((props.get("criterion", report.nodeid.rsplit("::", 1)[1]), status,
                          props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in _criteria:
        terminalreporter.write_line(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
