import pathlib

import pytest
from hypothesis import HealthCheck, settings

from postgroupoid.catalog import catalog

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def cat():
    return {name: inst.post_groupoid() for name, inst in catalog().items()}


@pytest.fixture(scope="session")
def instances():
    return catalog()


@pytest.fixture
def golden():
    return GOLDEN


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
