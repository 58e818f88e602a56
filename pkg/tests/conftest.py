import os

import hypothesis
import pytest

from pgaut.modarith import GroupParams

hypothesis.settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=1000)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def params(p, n, i):
    return GroupParams.canonical(p, n, i)


@pytest.fixture
def p331():
    return params(3, 3, 1)


@pytest.fixture
def p342():
    return params(3, 4, 2)


@pytest.fixture
def p332():
    return params(3, 3, 2)


# one summary line per acceptance criterion
_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and rep.when == "call":
        _CRITERIA[mark.args[0]] = (rep.outcome, item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        outcome, name = _CRITERIA[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if outcome == 'passed' else 'FAIL'}  ({name})")
