import pytest

from toric_dual.hull import convex_hull
from toric_dual.wps import wps_polytope

QUAD = [(0, 0), (0, 2), (1, 3), (3, 0)]

_criteria: dict[int, list[str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _criteria.setdefault(crit, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(_criteria):
        ok = all(o == "passed" for o in _criteria[c])
        terminalreporter.write_line(f"criterion {c}: {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="session")
def quad():
    return convex_hull(QUAD)


@pytest.fixture(scope="session")
def p61015():
    return wps_polytope((1, 6, 10, 15))


@pytest.fixture(scope="session")
def p1235():
    return wps_polytope((1, 2, 3, 5))
