import pytest

from bbdigraph import BalancedBipartiteDigraph, ExceptionName, build_exception


@pytest.fixture
def H1():
    return build_exception(ExceptionName.H1)


@pytest.fixture
def H2():
    return build_exception(ExceptionName.H2)


@pytest.fixture
def H2X():
    return build_exception(ExceptionName.H2X)


@pytest.fixture
def H3():
    return build_exception(ExceptionName.H3)


@pytest.fixture
def complete3():
    return BalancedBipartiteDigraph.complete(3)


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", None) != "call":
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                lines.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for crit, status in sorted(lines, key=lambda t: int(t[0].split(".")[0])):
            terminalreporter.write_line(f"[{status}] {crit}")
