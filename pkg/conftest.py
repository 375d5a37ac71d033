"""
Shared fixtures: golden .quiver files and small hand-built presentations
"""

from pathlib import Path

import pytest

from gentle.config import get_settings
from gentle.quiver_core import presentation
from gentle.quiver_file import load_presentation

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.quiver")


def load_fixture(name: str):
    return load_presentation(fixture_path(name))


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def worked():
    return load_fixture("worked_example")


@pytest.fixture
def signed():
    return load_fixture("signed_example")


@pytest.fixture
def twin_a():
    return load_fixture("twin_A")


@pytest.fixture
def twin_b():
    return load_fixture("twin_B")


@pytest.fixture
def kronecker():
    return load_fixture("kronecker")


@pytest.fixture
def a2():
    return load_fixture("a2")


@pytest.fixture
def point():
    return presentation(["v"], [], name="point")


@pytest.fixture
def loop_rel():
    return presentation(["v"], [("a", "v", "v")], [("a", "a")], name="loop_rel")


@pytest.fixture
def two_cycle():
    return presentation(["u", "v"], [("g", "u", "v"), ("d", "v", "u")], [("d", "g"), ("g", "d")],
                        name="two_cycle")
