import copy
import re

import pytest
from hypothesis import HealthCheck, settings

from igape import fixture_path
from igape.persistence import load_model

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

_CRITERION = re.compile(r"test_acceptance\.py::test_(a\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One verdict line per acceptance criterion, printed on every run."""
    verdicts = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            match = _CRITERION.search(getattr(report, "nodeid", ""))
            if match and getattr(report, "when", "call") == "call":
                tag, name = match.group(1).upper(), match.group(2)
                verdicts[(tag, name)] = "PASS" if status == "passed" else "FAIL"
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for (tag, name), verdict in sorted(verdicts.items()):
        terminalreporter.write_line(
            f"{tag} {name.replace('_', '-')}: {verdict}")

_DOC = load_model(fixture_path("online-shopping.igape.json"))


@pytest.fixture
def document():
    # each test gets its own copy so mutation cannot leak between tests
    return copy.deepcopy(_DOC)


@pytest.fixture
def model(document):
    return document.model


@pytest.fixture
def model_path():
    return str(fixture_path("online-shopping.igape.json"))


@pytest.fixture
def ranks_path():
    return str(fixture_path("expert-ranks.csv"))
