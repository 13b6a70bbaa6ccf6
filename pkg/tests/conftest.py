from __future__ import annotations

import pytest

from threeweight.constructions import build_d_rho, quadric_two_weight
from threeweight.field import make_field


@pytest.fixture(scope="session")
def gf8():
    return make_field(3)


@pytest.fixture(scope="session")
def code_6_5():
    """The [6,5,2] code C_{D_1} at m = 5, u = 1."""
    return build_d_rho(make_field(5), 1, 1).code


@pytest.fixture(scope="session")
def code_10_5():
    return build_d_rho(make_field(5), 1, 0).code


@pytest.fixture(scope="session")
def code_28_7():
    return build_d_rho(make_field(7), 1, 0).code


@pytest.fixture(scope="session")
def code_36_7():
    return build_d_rho(make_field(7), 1, 1).code


@pytest.fixture(scope="session")
def quadric_5_4():
    return quadric_two_weight(2, "elliptic").code


_CRITERIA: list = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    ident, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    if rep.failed and not detail:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else ""
    _CRITERIA.append((ident, "PASS" if rep.passed else "FAIL", call.duration, title, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for ident, status, secs, title, detail in sorted(_CRITERIA):
        line = f"criterion {ident}: {status} ({secs:.2f}s) {title}"
        terminalreporter.write_line(line + (f": {detail}" if detail else ""))
