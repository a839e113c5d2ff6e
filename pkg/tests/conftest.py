from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from dblcomplex.ce import invariant_bicomplex, parse_cdga

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_cdga(name: str):
    return parse_cdga((FIXTURES / f"{name}.cdga").read_text())


_MODELS: dict = {}


def model(name: str):
    """Invariant-form bicomplex of a fixture, cached across tests."""
    if name not in _MODELS:
        _MODELS[name] = invariant_bicomplex(load_cdga(name))
    return _MODELS[name]


@pytest.fixture(scope="session")
def iwasawa():
    return model("iwasawa")


@pytest.fixture(scope="session")
def kodaira_thurston():
    return model("kodaira_thurston")


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
