import pytest

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        prev = _acceptance.get(name)
        if prev != "FAIL":
            _acceptance[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance.items():
        terminalreporter.write_line(f"{outcome}  {name}")


@pytest.fixture(scope="session")
def small_mu():
    """mu(n) for 0 <= n <= 10^4 + 10 by trial division (index 0 unused)."""
    from arithcorr.oracle import naive_value

    return [0] + [naive_value("MU", n) for n in range(1, 10**4 + 11)]


@pytest.fixture(scope="session")
def small_lam():
    from arithcorr.oracle import naive_value

    return [0] + [naive_value("LAMBDA", n) for n in range(1, 10**4 + 11)]
