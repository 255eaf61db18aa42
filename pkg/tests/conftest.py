from __future__ import annotations

from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def fixture_path(name: str) -> str:
    return str(files("nodetrix").joinpath("data", name))


@pytest.fixture
def nonlight_path() -> str:
    return fixture_path("nonlight.ntx")


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
